//! Fixed-photon-number input states in the `Ĵ_z` (input port) or `Ĵ_y` (arm) basis.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_dist::{distribution, holevo_variance};
use crate::scalar::{from_i64, lit, to_f64, Real};
use crate::spin::SpinIndex;
use crate::su2::{quarter_turn, wigner_column};

/// Eigenbasis the coefficients of an [`AngularState`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `|jμ⟩_z`: photon-number split between the two input ports.
    Z,
    /// `|jμ⟩_y`: photon-number split between the two interferometer arms.
    Y,
}

/// The input states studied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// Minimum Holevo variance state, `(j+1)^{-1/2} Σ sin((μ+j+1)π/(2j+2)) |jμ⟩_y`.
    Optimal,
    /// Equal photon numbers in both ports, `|j0⟩_z`.
    J0,
    /// `(|j0⟩_z + |j1⟩_z)/√2`.
    J0J1,
    /// All photons in one port, `|jj⟩_z`.
    JJ,
}

impl StateKind {
    pub const ALL: [StateKind; 4] = [StateKind::Optimal, StateKind::J0, StateKind::J0J1, StateKind::JJ];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Optimal => "optimal",
            StateKind::J0 => "j0",
            StateKind::J0J1 => "j0j1",
            StateKind::JJ => "jj",
        }
    }

    /// Checks the photon-number constraints of the state.
    pub fn validate_photons(self, photons: u32) -> Result<()> {
        if photons == 0 {
            return Err(Error::domain("a state with no photons carries no phase information"));
        }
        match self {
            StateKind::J0 if !photons.is_multiple_of(2) => Err(Error::domain(format!(
                "|j0⟩ needs an even photon number, got {photons}"
            ))),
            StateKind::J0J1 if !photons.is_multiple_of(2) || photons < 2 => Err(Error::domain(format!(
                "(|j0⟩+|j1⟩)/√2 needs an even photon number of at least 2, got {photons}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "optimal" | "opt" => Ok(StateKind::Optimal),
            "j0" => Ok(StateKind::J0),
            "j0j1" | "j0+j1" => Ok(StateKind::J0J1),
            "jj" => Ok(StateKind::JJ),
            other => Err(Error::domain(format!("unknown state kind '{other}'"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "z",
            Basis::Y => "y",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Basis::Z),
            "y" => Ok(Basis::Y),
            other => Err(Error::domain(format!("unknown basis '{other}'"))),
        }
    }
}

/// A normalized two-mode pure state of fixed photon number `N = 2j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularState<T> {
    twice_j: i64,
    basis: Basis,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> AngularState<T> {
    /// Builds a state from amplitudes ordered `μ = −j..j`, normalizing them.
    pub fn from_coefficients(photons: u32, basis: Basis, coeffs: Vec<Complex<T>>) -> Result<Self> {
        let j = SpinIndex::for_photons(photons);
        if photons == 0 {
            return Err(Error::domain("a state with no photons carries no phase information"));
        }
        if coeffs.len() != j.multiplicity() {
            return Err(Error::domain(format!(
                "{} coefficients supplied for {photons} photons (expected {})",
                coeffs.len(),
                j.multiplicity()
            )));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::domain("state coefficients have zero or non-finite norm"));
        }
        let coeffs = coeffs.into_iter().map(|c| c / norm).collect();
        Ok(AngularState {
            twice_j: j.twice(),
            basis,
            coeffs,
        })
    }

    pub fn photons(&self) -> u32 {
        self.twice_j as u32
    }

    pub fn j(&self) -> SpinIndex {
        SpinIndex::from_twice(self.twice_j)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Amplitudes ordered `μ = −j..j`.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, mu: SpinIndex) -> Option<Complex<T>> {
        self.j().check_projection(mu).ok()?;
        Some(self.coeffs[self.j().offset_of(mu)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (SpinIndex, Complex<T>)> + '_ {
        self.j().projections().zip(self.coeffs.iter().copied())
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Re-expresses the state in `target`; the identity when already there.
    pub fn to_basis(&self, target: Basis) -> Result<AngularState<T>> {
        to_basis(self, target)
    }
}

/// Constructs one of the studied states in the requested basis.
pub fn make_state<T: Real>(photons: u32, kind: StateKind, basis: Basis) -> Result<AngularState<T>> {
    kind.validate_photons(photons)?;
    let j = SpinIndex::for_photons(photons);
    let native = match kind {
        StateKind::Optimal => AngularState::from_coefficients(photons, Basis::Y, optimal_y_coefficients(j))?,
        StateKind::J0 => single_z(j, &[(SpinIndex::ZERO, T::one())])?,
        StateKind::J0J1 => {
            let amp = lit::<T>(std::f64::consts::FRAC_1_SQRT_2);
            single_z(j, &[(SpinIndex::ZERO, amp), (SpinIndex::from_int(1), amp)])?
        }
        StateKind::JJ => single_z(j, &[(j, T::one())])?,
    };
    to_basis(&native, basis)
}

fn single_z<T: Real>(j: SpinIndex, entries: &[(SpinIndex, T)]) -> Result<AngularState<T>> {
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); j.multiplicity()];
    for &(mu, amp) in entries {
        j.check_projection(mu)?;
        coeffs[j.offset_of(mu)] = Complex::new(amp, T::zero());
    }
    AngularState::from_coefficients(j.twice() as u32, Basis::Z, coeffs)
}

fn optimal_y_coefficients<T: Real>(j: SpinIndex) -> Vec<Complex<T>> {
    let tj = j.twice();
    // (μ + j + 1)π / (2j + 2) with doubled labels
    let denom: T = from_i64(2 * tj + 4);
    let scale = (from_i64::<T>(tj + 2) / lit(2.0)).sqrt().recip();
    j.projections()
        .map(|mu| {
            let angle = from_i64::<T>(mu.twice() + tj + 2) * T::PI() / denom;
            Complex::new(scale * angle.sin(), T::zero())
        })
        .collect()
}

/// Unitary change of basis through `_y⟨jμ|jν⟩_z`.
pub fn to_basis<T: Real>(state: &AngularState<T>, target: Basis) -> Result<AngularState<T>> {
    if state.basis == target {
        return Ok(state.clone());
    }
    let j = state.j();
    let n = j.multiplicity();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; n];
    match target {
        // c_μ = Σ_ν e^{i(π/2)(ν−μ)} I_{μν} ψ_ν
        Basis::Y => {
            for (nu, psi) in state.iter() {
                if psi == zero {
                    continue;
                }
                let column = wigner_column::<T>(j, nu)?;
                for ((mu, element), slot) in column.iter().zip(out.iter_mut()) {
                    *slot = *slot + quarter_turn::<T>(nu.twice() - mu.twice()) * psi * element;
                }
            }
        }
        // ψ_ν = Σ_μ e^{i(π/2)(μ−ν)} I_{μν} c_μ
        Basis::Z => {
            for (nu, slot) in j.projections().zip(out.iter_mut()) {
                let column = wigner_column::<T>(j, nu)?;
                *slot = project_onto_z(state, &column.into_values(), nu);
            }
        }
    }
    if out.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::numeric(
            "states",
            "to_basis",
            "non-finite coefficient after basis change",
        ));
    }
    Ok(AngularState {
        twice_j: state.twice_j,
        basis: target,
        coeffs: out,
    })
}

fn project_onto_z<T: Real>(state_y: &AngularState<T>, column: &[T], nu: SpinIndex) -> Complex<T> {
    state_y
        .iter()
        .zip(column)
        .fold(Complex::new(T::zero(), T::zero()), |acc, ((mu, c), &element)| {
            acc + quarter_turn::<T>(mu.twice() - nu.twice()) * c * element
        })
}

/// Projections kept by a truncation window of `window` eigenstates.
///
/// Integer `j`: the symmetric window `μ = −(k−1)/2..(k−1)/2`. Half-integer `j`:
/// the `k` half-integers closest to zero, the odd one out placed at positive `μ`.
pub fn truncation_window(photons: u32, window: usize) -> Result<Vec<SpinIndex>> {
    let j = SpinIndex::for_photons(photons);
    if window.is_multiple_of(2) {
        return Err(Error::domain(format!("truncation window must be odd, got {window}")));
    }
    if window == 0 || window > j.multiplicity() {
        return Err(Error::domain(format!(
            "truncation window {window} outside 1..={} for {photons} photons",
            j.multiplicity()
        )));
    }
    let half = (window as i64 - 1) / 2;
    let window: Vec<SpinIndex> = if j.is_integer() {
        (-half..=half).map(SpinIndex::from_int).collect()
    } else {
        (-half..=half).map(|k| SpinIndex::from_twice(2 * k + 1)).collect()
    };
    for &mu in &window {
        j.check_projection(mu)?;
    }
    Ok(window)
}

/// Optimal state with all `Ĵ_z` coefficients outside a window around `μ = 0` discarded.
pub fn truncate_optimal<T: Real>(photons: u32, window: usize) -> Result<AngularState<T>> {
    StateKind::Optimal.validate_photons(photons)?;
    let kept = truncation_window(photons, window)?;
    let j = SpinIndex::for_photons(photons);
    let optimal = make_state::<T>(photons, StateKind::Optimal, Basis::Y)?;
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); j.multiplicity()];
    for nu in kept {
        let column = wigner_column::<T>(j, nu)?;
        coeffs[j.offset_of(nu)] = project_onto_z(&optimal, column.values(), nu);
    }
    AngularState::from_coefficients(photons, Basis::Z, coeffs)
}

/// Smallest odd window whose truncated optimal state has a Holevo variance at
/// most `factor` times that of the exact optimal state.
pub fn min_eigenstates<T: Real>(photons: u32, factor: f64) -> Result<usize> {
    if !(factor > 1.0) {
        return Err(Error::domain(format!("variance factor must exceed 1, got {factor}")));
    }
    StateKind::Optimal.validate_photons(photons)?;
    let j = SpinIndex::for_photons(photons);
    let optimal = make_state::<T>(photons, StateKind::Optimal, Basis::Y)?;
    let exact = to_f64(holevo_variance(&distribution(&optimal)?)?.value());
    let bound = factor * exact;

    let mut z_coeffs = vec![Complex::new(T::zero(), T::zero()); j.multiplicity()];
    let mut columns: Vec<Option<Vec<T>>> = vec![None; j.multiplicity()];
    let mut window = 1;
    while window <= j.multiplicity() {
        for nu in truncation_window(photons, window)? {
            let slot = j.offset_of(nu);
            if columns[slot].is_none() {
                let column = wigner_column::<T>(j, nu)?.into_values();
                z_coeffs[slot] = project_onto_z(&optimal, &column, nu);
                columns[slot] = Some(column);
            }
        }
        let variance = truncated_variance(j, &z_coeffs, &columns)?;
        if variance <= bound {
            return Ok(window);
        }
        window += 2;
    }
    // odd photon numbers cannot reach the full multiplet with an odd window
    Ok(j.multiplicity())
}

/// Holevo variance of the renormalized state with the given sparse `Ĵ_z` coefficients.
fn truncated_variance<T: Real>(j: SpinIndex, z_coeffs: &[Complex<T>], columns: &[Option<Vec<T>>]) -> Result<f64> {
    let n = j.multiplicity();
    let mut y = vec![Complex::new(T::zero(), T::zero()); n];
    let mut norm = T::zero();
    for (slot, column) in columns.iter().enumerate() {
        let Some(column) = column else { continue };
        let nu = j.projection_at(slot);
        let psi = z_coeffs[slot];
        norm = norm + psi.norm_sqr();
        for (k, (out, &element)) in y.iter_mut().zip(column).enumerate() {
            let mu = j.projection_at(k);
            *out = *out + quarter_turn::<T>(nu.twice() - mu.twice()) * psi * element;
        }
    }
    let first_moment = y
        .windows(2)
        .fold(Complex::new(T::zero(), T::zero()), |acc, w| acc + w[1] * w[0].conj());
    let magnitude = to_f64(first_moment.norm()) / to_f64(norm);
    if magnitude < 1e-30 {
        return Ok(f64::INFINITY);
    }
    Ok(magnitude.powi(-2) - 1.0)
}
