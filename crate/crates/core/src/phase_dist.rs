//! Canonical phase distributions in Fourier form.
//!
//! The density of a state with `Ĵ_y` amplitudes `c_μ` is
//! `P(φ) = (1/2π) |Σ_μ c_μ e^{−iμφ}|² = (1/2π) Σ_k P_k e^{ikφ}` with
//! `P_k = Σ_μ c_μ conj(c_{μ+k})`. States whose odd harmonics vanish are
//! treated modulo π, with density `(1/π) Σ_k P_k e^{ikφ}` on `[−π/2, π/2)`.

use std::fmt;

use num_complex::Complex;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{autocorrelation, evaluate, synthesize};
use crate::scalar::{from_i64, from_usize, lit, to_f64, Real};
#[cfg(test)]
use crate::spin::SpinIndex;
use crate::states::{AngularState, Basis};

/// Odd harmonics below this magnitude are treated as absent.
pub const PERIOD_DETECTION_THRESHOLD: f64 = 1e-12;

/// First moments below this magnitude make a Holevo variance unbounded.
const UNBOUNDED_MOMENT: f64 = 1e-30;

/// Inverse-CDF grid nodes per `(N + 2)`.
const SAMPLING_NODES_PER_PHOTON: usize = 64;

/// Periodicity the density is analysed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Period {
    #[serde(rename = "2pi")]
    TwoPi,
    #[serde(rename = "pi")]
    Pi,
}

impl Period {
    pub fn length<T: Real>(self) -> T {
        match self {
            Period::TwoPi => T::PI() + T::PI(),
            Period::Pi => T::PI(),
        }
    }

    pub fn half_length<T: Real>(self) -> T {
        self.length::<T>() / lit(2.0)
    }

    /// Harmonic spacing of a density with this period.
    pub(crate) fn step(self) -> i64 {
        match self {
            Period::TwoPi => 1,
            Period::Pi => 2,
        }
    }

    /// Wraps an angle into `[−L/2, L/2)`.
    pub fn wrap<T: Real>(self, phi: T) -> T {
        let len = self.length::<T>();
        let half = len / lit(2.0);
        let shifted = phi + half;
        let wrapped = shifted - len * (shifted / len).floor();
        // rounding can land exactly on the upper edge
        if wrapped >= len {
            -half
        } else {
            wrapped - half
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Period::TwoPi => "2pi",
            Period::Pi => "pi",
        })
    }
}

/// A phase spread that may be unbounded (uniform-like distributions).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spread<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> Spread<T> {
    /// The value, `+∞` for [`Spread::Infinite`].
    pub fn value(self) -> T {
        match self {
            Spread::Finite(v) => v,
            Spread::Infinite => T::infinity(),
        }
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Spread::Finite(v) => Some(v),
            Spread::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Spread::Infinite)
    }

    pub fn map(self, f: impl FnOnce(T) -> T) -> Spread<T> {
        match self {
            Spread::Finite(v) => Spread::Finite(f(v)),
            Spread::Infinite => Spread::Infinite,
        }
    }
}

impl<T: Real> Serialize for Spread<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Spread::Finite(v) => serializer.serialize_f64(to_f64(*v)),
            Spread::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Canonical phase density of an `N`-photon state.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseDistribution<T> {
    photons: u32,
    period: Period,
    /// `P_k` at index `k + N`.
    coeffs: Vec<Complex<T>>,
    /// `Ĵ_y` amplitudes the coefficients came from, when known.
    amplitude: Option<Vec<Complex<T>>>,
}

impl<T: Real> PhaseDistribution<T> {
    /// Builds a distribution from `P_k`, `k = −N..N`.
    ///
    /// The coefficients are rescaled so that `P_0 = 1`; Hermitian symmetry is
    /// required, and period π requires vanishing odd harmonics.
    pub fn from_coefficients(photons: u32, period: Period, coeffs: Vec<Complex<T>>) -> Result<Self> {
        let n = photons as usize;
        if coeffs.len() != 2 * n + 1 {
            return Err(Error::domain(format!(
                "{} Fourier coefficients supplied for {photons} photons (expected {})",
                coeffs.len(),
                2 * n + 1
            )));
        }
        let p0 = coeffs[n];
        if !(p0.re > T::zero()) || p0.im.abs() > lit(1e-12) {
            return Err(Error::domain("P_0 must be real and positive"));
        }
        let tol: T = lit(1e-10);
        for k in 1..=n {
            if (coeffs[n + k] - coeffs[n - k].conj()).norm() > tol {
                return Err(Error::domain(format!("P_{k} and P_-{k} are not conjugate")));
            }
        }
        let mut dist = PhaseDistribution {
            photons,
            period: Period::TwoPi,
            coeffs: coeffs.into_iter().map(|c| c / p0.re).collect(),
            amplitude: None,
        };
        dist = dist.with_period(period)?;
        Ok(dist)
    }

    /// The flat density.
    pub fn uniform(photons: u32, period: Period) -> Self {
        let n = photons as usize;
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); 2 * n + 1];
        coeffs[n] = Complex::new(T::one(), T::zero());
        PhaseDistribution {
            photons,
            period,
            coeffs,
            amplitude: None,
        }
    }

    /// Reinterprets the distribution with another period.
    ///
    /// Switching to π zeroes the odd harmonics, which must already be negligible.
    pub fn with_period(mut self, period: Period) -> Result<Self> {
        if period == Period::Pi {
            let largest_odd = self.odd_harmonic_magnitude();
            if largest_odd > lit(PERIOD_DETECTION_THRESHOLD) {
                return Err(Error::domain(format!(
                    "period π needs vanishing odd harmonics, largest is {:e}",
                    to_f64(largest_odd)
                )));
            }
            let n = self.photons as i64;
            for k in (-n..=n).filter(|k| k % 2 != 0) {
                self.coeffs[(k + n) as usize] = Complex::new(T::zero(), T::zero());
            }
        }
        self.period = period;
        Ok(self)
    }

    fn odd_harmonic_magnitude(&self) -> T {
        self.harmonics()
            .filter(|(k, _)| k % 2 != 0)
            .map(|(_, p)| p.norm())
            .fold(T::zero(), T::max)
    }

    pub fn photons(&self) -> u32 {
        self.photons
    }

    pub fn period(&self) -> Period {
        self.period
    }

    /// `P_k` for `k = −N..N` in order.
    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `P_k`, zero outside `−N..N`.
    pub fn coefficient(&self, k: i64) -> Complex<T> {
        let n = self.photons as i64;
        if k.abs() > n {
            Complex::new(T::zero(), T::zero())
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    /// `(k, P_k)` pairs, `k = −N..N`.
    pub fn harmonics(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        let n = self.photons as i64;
        self.coeffs.iter().enumerate().map(move |(i, p)| (i as i64 - n, *p))
    }

    /// `Ĵ_y` amplitudes of the generating state, when the distribution came from one.
    pub fn amplitude(&self) -> Option<&[Complex<T>]> {
        self.amplitude.as_deref()
    }

    /// Density prefactor `1/L` for a period of length `L`.
    pub(crate) fn scale(&self) -> T {
        self.period.length::<T>().recip()
    }

    /// Principal interval start `−L/2`.
    pub fn lower_edge(&self) -> T {
        -self.period.half_length::<T>()
    }

    /// Probability density at `φ` (wrapped into the principal interval).
    pub fn density(&self, phi: T) -> T {
        let phi = self.period.wrap(phi);
        evaluate(self.harmonics(), phi).re * self.scale()
    }

    /// dP/dφ.
    pub fn density_derivative(&self, phi: T) -> T {
        let phi = self.period.wrap(phi);
        let terms = self
            .harmonics()
            .map(|(k, p)| (k, p * Complex::new(T::zero(), from_i64::<T>(k))));
        evaluate(terms, phi).re * self.scale()
    }

    /// Density on `points` equally spaced nodes `lower_edge + offset + p·L/points`.
    pub fn density_grid(&self, offset: T, points: usize) -> Vec<T> {
        self.grid(offset, points, false)
    }

    pub(crate) fn derivative_grid(&self, offset: T, points: usize) -> Vec<T> {
        self.grid(offset, points, true)
    }

    fn grid(&self, offset: T, points: usize, derivative: bool) -> Vec<T> {
        let step = self.period.step();
        let start = self.lower_edge() + offset;
        // a Pi-periodic density is a series in e^{i(k/2)·2φ}; map θ = 2φ
        let theta_offset = start * from_i64::<T>(step);
        let terms = self.harmonics().filter(|(k, _)| k % step == 0).map(|(k, p)| {
            let weight = if derivative {
                Complex::new(T::zero(), from_i64::<T>(k))
            } else {
                Complex::new(T::one(), T::zero())
            };
            (k / step, p * weight)
        });
        let scale = self.scale();
        synthesize(terms, theta_offset, points)
            .into_iter()
            .map(|v| v.re * scale)
            .collect()
    }

    /// Cumulative probability from the lower edge of the principal interval.
    pub fn cdf(&self, phi: T) -> T {
        self.cdf_unwrapped(self.period.wrap(phi))
    }

    /// Probability inside `[center − half_width, center + half_width]`.
    pub fn mass_within(&self, center: T, half_width: T) -> T {
        let p0 = self.coefficient(0).re;
        let two = lit::<T>(2.0);
        let mut acc = two * half_width * p0;
        for (k, p) in self.harmonics().filter(|(k, _)| *k > 0) {
            let kf = from_i64::<T>(k);
            let rotated = p * Complex::from_polar(T::one(), kf * center);
            acc = acc + two * two * rotated.re * (kf * half_width).sin() / kf;
        }
        acc * self.scale()
    }

    /// Mean phase from the first (period 2π) or second (period π) circular moment.
    pub fn mean_phase(&self) -> T {
        let (moment, divisor) = match self.period {
            Period::TwoPi => (circular_moment(self, 1), T::one()),
            Period::Pi => (circular_moment(self, 2), lit(2.0)),
        };
        if to_f64(moment.norm()) < UNBOUNDED_MOMENT {
            return T::zero();
        }
        // adding zero turns −0 into +0
        moment.arg() / divisor + T::zero()
    }
}

/// Canonical phase distribution of a state.
pub fn distribution<T: Real>(state: &AngularState<T>) -> Result<PhaseDistribution<T>> {
    let y = state.to_basis(Basis::Y)?;
    let amplitude = y.coeffs().to_vec();
    let mut coeffs = autocorrelation(&amplitude);
    let p0 = coeffs[state.photons() as usize].re;
    if !(p0 > T::zero()) || !p0.is_finite() {
        return Err(Error::numeric("phase_dist", "distribution", format!("P_0 = {p0}")));
    }
    coeffs.iter_mut().for_each(|c| *c = *c / p0);
    let mut dist = PhaseDistribution {
        photons: state.photons(),
        period: Period::TwoPi,
        coeffs,
        amplitude: Some(amplitude),
    };
    let odd = dist.odd_harmonic_magnitude();
    let has_even = dist
        .harmonics()
        .any(|(k, p)| k != 0 && k % 2 == 0 && p.norm() > lit(PERIOD_DETECTION_THRESHOLD));
    if odd <= lit(PERIOD_DETECTION_THRESHOLD) && has_even {
        dist = dist.with_period(Period::Pi)?;
    }
    Ok(dist)
}

/// `⟨e^{imφ}⟩ = P_{−m}`; zero beyond the highest harmonic.
pub fn circular_moment<T: Real>(dist: &PhaseDistribution<T>, m: u32) -> Complex<T> {
    dist.coefficient(-(m as i64))
}

/// Holevo variance `|⟨e^{iφ}⟩|^{−2} − 1` of a 2π-periodic distribution.
pub fn holevo_variance<T: Real>(dist: &PhaseDistribution<T>) -> Result<Spread<T>> {
    if dist.period == Period::Pi {
        return Err(Error::domain(
            "the Holevo variance of a π-periodic distribution is infinite; use holevo_variance_mod_pi",
        ));
    }
    Ok(inverse_moment_variance(circular_moment(dist, 1).norm()))
}

/// Variance modulo π, `(|⟨e^{2iφ}⟩|^{−2} − 1) / 4`.
pub fn holevo_variance_mod_pi<T: Real>(dist: &PhaseDistribution<T>) -> Spread<T> {
    inverse_moment_variance(circular_moment(dist, 2).norm()).map(|v| v / lit(4.0))
}

fn inverse_moment_variance<T: Real>(magnitude: T) -> Spread<T> {
    if to_f64(magnitude) < UNBOUNDED_MOMENT {
        Spread::Infinite
    } else {
        Spread::Finite(magnitude.powi(-2) - T::one())
    }
}

/// Closed-form density of the optimal state,
/// `(1/2π)(1/(N+2)) sin²(π/(N+2)) (1 + cos((N+2)φ)) / (cos φ − cos(π/(N+2)))²`.
pub fn optimal_density_closed<T: Real>(photons: u32, phi: T) -> T {
    let m: T = from_i64(photons as i64 + 2);
    let theta = T::PI() / m;
    let two_pi = T::PI() + T::PI();
    let gap = phi.cos() - theta.cos();
    if gap.abs() < lit(1e-6) {
        return optimal_density_near_pole(m, theta, phi);
    }
    theta.sin().powi(2) * (T::one() + (m * phi).cos()) / (gap * gap) / (two_pi * m)
}

/// Removable points `φ = ±π/(N+2)`: expansion in `t = |φ| − π/(N+2)`.
fn optimal_density_near_pole<T: Real>(m: T, theta: T, phi: T) -> T {
    // 1 + cos(mφ) = 1 − cos(m t) and cos φ − cos θ = −2 sin((φ+θ)/2) sin(t/2)
    let t = phi.abs() - theta;
    let two = lit::<T>(2.0);
    let half = t / two;
    let mt = m * t;
    let num = if mt.abs() < lit(1e-4) {
        mt * mt / two * (T::one() - mt * mt / lit(12.0))
    } else {
        T::one() - mt.cos()
    };
    let s = (phi.abs() + theta) / two;
    let sinc_half = if half.abs() < lit(1e-4) {
        T::one() - half * half / lit(6.0)
    } else {
        half.sin() / half
    };
    // (cos φ − cos θ)² = sin²s · t² · sinc²(t/2)
    let num_over_t2 = if mt.abs() < lit(1e-4) {
        m * m / two * (T::one() - mt * mt / lit(12.0))
    } else {
        num / (t * t)
    };
    let two_pi = T::PI() + T::PI();
    theta.sin().powi(2) * num_over_t2 / (s.sin().powi(2) * sinc_half * sinc_half) / (two_pi * m)
}

/// Draws `count` i.i.d. phases from the density.
///
/// A cumulative table on `64·(N+2)` uniform nodes locates each draw's cell; the
/// draw is then refined inside the cell by safeguarded Newton steps on the exact CDF.
pub fn sample<T: Real>(dist: &PhaseDistribution<T>, count: usize, seed: u64) -> Result<Vec<T>> {
    if count == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let nodes = SAMPLING_NODES_PER_PHOTON * (dist.photons as usize + 2);
    let len = dist.period.length::<T>();
    let h = len / from_usize::<T>(nodes);
    let lo = dist.lower_edge();
    let mut table: Vec<T> = cdf_grid(dist, nodes);
    // enforce monotonicity against rounding
    for i in 1..table.len() {
        if table[i] < table[i - 1] {
            table[i] = table[i - 1];
        }
    }
    let total = *table.last().expect("non-empty table");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let u = lit::<T>(rng.random::<f64>()) * total;
        let cell = table.partition_point(|&v| v <= u).clamp(1, nodes) - 1;
        let mut a = lo + h * from_usize::<T>(cell);
        let mut b = a + h;
        let (mut fa, fb) = (table[cell], table[cell + 1]);
        let mut x = if fb > fa {
            a + h * (u - fa) / (fb - fa)
        } else {
            a + h / lit(2.0)
        };
        for _ in 0..30 {
            let fx = dist.cdf_unwrapped(x) - u;
            if fx.abs() <= lit::<T>(1e-14) {
                break;
            }
            if fx > T::zero() {
                b = x;
            } else {
                a = x;
                fa = fx + u;
            }
            let slope = dist.density(x);
            let newton = x - fx / slope;
            x = if slope > T::zero() && newton > a && newton < b {
                newton
            } else {
                (a + b) / lit(2.0)
            };
            if b - a < lit(1e-15) {
                break;
            }
        }
        let _ = fa;
        out.push(x.max(lo).min(lo + len - h * lit(1e-9)));
    }
    Ok(out)
}

impl<T: Real> PhaseDistribution<T> {
    /// CDF without wrapping, valid on the closed principal interval.
    fn cdf_unwrapped(&self, phi: T) -> T {
        let lo = self.lower_edge();
        let p0 = self.coefficient(0).re;
        let terms: Vec<(i64, Complex<T>)> = self
            .harmonics()
            .filter(|(k, _)| *k != 0)
            .map(|(k, p)| (k, p / Complex::new(T::zero(), from_i64::<T>(k))))
            .collect();
        let upper = evaluate(terms.iter().copied(), phi);
        let lower = evaluate(terms.iter().copied(), lo);
        (p0 * (phi - lo) + (upper - lower).re) * self.scale()
    }
}

/// CDF at `lower_edge + p·L/nodes` for `p = 0..=nodes`.
fn cdf_grid<T: Real>(dist: &PhaseDistribution<T>, nodes: usize) -> Vec<T> {
    let step = dist.period.step();
    let lo = dist.lower_edge();
    let terms: Vec<(i64, Complex<T>)> = dist
        .harmonics()
        .filter(|(k, _)| *k != 0 && k % step == 0)
        .map(|(k, p)| (k, p / Complex::new(T::zero(), from_i64::<T>(k))))
        .collect();
    let base = evaluate(terms.iter().copied(), lo).re;
    let theta_offset = lo * from_i64::<T>(step);
    let periodic = synthesize(terms.iter().map(|&(k, q)| (k / step, q)), theta_offset, nodes);
    let p0 = dist.coefficient(0).re;
    let h = dist.period.length::<T>() / from_usize::<T>(nodes);
    let scale = dist.scale();
    let mut out: Vec<T> = periodic
        .iter()
        .enumerate()
        .map(|(p, v)| (p0 * h * from_usize::<T>(p) + v.re - base) * scale)
        .collect();
    out.push(p0 * dist.period.length::<T>() * scale);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_state, StateKind};
    use std::f64::consts::PI;

    fn amplitude_index(photons: u32, mu: SpinIndex) -> usize {
        SpinIndex::for_photons(photons).offset_of(mu)
    }

    #[test]
    fn basis_state_is_uniform() {
        let j = SpinIndex::for_photons(6);
        let mut c = vec![Complex::new(0.0, 0.0); 7];
        c[amplitude_index(6, SpinIndex::from_int(1))] = Complex::new(1.0, 0.0);
        let state = AngularState::from_coefficients(6, Basis::Y, c).unwrap();
        let dist = distribution(&state).unwrap();
        assert_eq!(dist.period(), Period::TwoPi);
        for (k, p) in dist.harmonics() {
            let expected: f64 = if k == 0 { 1.0 } else { 0.0 };
            assert!((p.re - expected).abs() < 1e-15 && p.im.abs() < 1e-15);
        }
        assert!((dist.density(0.3) - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!(holevo_variance(&dist).unwrap().is_infinite());
        assert!(holevo_variance_mod_pi(&dist).is_infinite());
        assert_eq!(circular_moment(&dist, 1), Complex::new(0.0, 0.0));
        let _ = j;
    }

    #[test]
    fn two_photon_balanced_state() {
        let state = make_state::<f64>(2, StateKind::J0, Basis::Z).unwrap();
        let dist = distribution(&state).unwrap();
        assert_eq!(dist.period(), Period::Pi);
        assert!((dist.coefficient(0).re - 1.0).abs() < 1e-15);
        assert_eq!(dist.coefficient(1).norm(), 0.0);
        assert!((dist.coefficient(2).norm() - 0.5).abs() < 1e-15);
        assert!((circular_moment(&dist, 2).norm() - 0.5).abs() < 1e-15);
        let v = holevo_variance_mod_pi(&dist).value();
        assert!((v - 0.75).abs() < 1e-14);
        assert!(matches!(holevo_variance(&dist), Err(Error::Domain(_))));
    }

    #[test]
    fn moments_beyond_the_photon_number_vanish() {
        let state = make_state::<f64>(3, StateKind::Optimal, Basis::Y).unwrap();
        let dist = distribution(&state).unwrap();
        assert_eq!(circular_moment(&dist, 4), Complex::new(0.0, 0.0));
    }

    #[test]
    fn optimal_holevo_variance() {
        for (n, expected) in [(1u32, 3.0), (4, 1.0 / 3.0)] {
            let dist = distribution(&make_state::<f64>(n, StateKind::Optimal, Basis::Y).unwrap()).unwrap();
            assert!((holevo_variance(&dist).unwrap().value() - expected).abs() < 1e-12);
            let m1 = circular_moment(&dist, 1);
            assert!((m1.re - (PI / (n as f64 + 2.0)).cos()).abs() < 1e-14 && m1.im.abs() < 1e-15);
        }
    }

    #[test]
    fn balanced_state_has_real_even_harmonics() {
        let dist = distribution(&make_state::<f64>(80, StateKind::J0, Basis::Z).unwrap()).unwrap();
        assert_eq!(dist.period(), Period::Pi);
        for (k, p) in dist.harmonics() {
            assert!(p.im.abs() < 1e-13, "P_{k} = {p}");
            if k % 2 != 0 {
                assert_eq!(p.norm(), 0.0);
            }
        }
        let phi = 0.4;
        assert!((dist.density(phi) - dist.density(phi + PI)).abs() < 1e-12);
        assert!((dist.density(phi) - dist.density(phi - PI)).abs() < 1e-12);
    }

    #[test]
    fn wrapping() {
        assert!((Period::TwoPi.wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((Period::Pi.wrap(PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(Period::Pi.wrap(0.25), 0.25);
    }

    #[test]
    fn closed_form_matches_fourier_synthesis() {
        let dist = distribution(&make_state::<f64>(40, StateKind::Optimal, Basis::Y).unwrap()).unwrap();
        for phi in [0.0, 0.1, -0.37, 2.0, PI - 1e-3] {
            assert!((optimal_density_closed(40, phi) - dist.density(phi)).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_form_zero_and_removable_point() {
        // N even: cos((N+2)π) = 1, so use φ where cos((N+2)φ) = −1
        let n = 4;
        let phi = PI / (n as f64 + 2.0) * 3.0;
        assert!(optimal_density_closed::<f64>(n, phi).abs() < 1e-15);
        let pole = PI / 42.0;
        let at = optimal_density_closed::<f64>(40, pole);
        for eps in [1e-5, 3e-5] {
            let left = optimal_density_closed::<f64>(40, pole - eps);
            let right = optimal_density_closed::<f64>(40, pole + eps);
            assert!((0.5 * (left + right) - at).abs() < 1e-6 * at.max(1.0));
        }
        assert!((optimal_density_closed::<f64>(40, -pole) - at).abs() < 1e-12);
    }

    #[test]
    fn grid_synthesis_matches_pointwise_density() {
        for kind in [StateKind::J0, StateKind::Optimal, StateKind::J0J1] {
            let dist = distribution(&make_state::<f64>(12, kind, Basis::Y).unwrap()).unwrap();
            let points = 37;
            let offset = 0.01;
            let grid = dist.density_grid(offset, points);
            let deriv = dist.derivative_grid(offset, points);
            let h = dist.period().length::<f64>() / points as f64;
            for (p, (v, d)) in grid.iter().zip(&deriv).enumerate() {
                let phi = dist.lower_edge() + offset + h * p as f64;
                assert!((v - dist.density(phi)).abs() < 1e-13);
                assert!((d - dist.density_derivative(phi)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cdf_grid_matches_pointwise_cdf() {
        let dist = distribution(&make_state::<f64>(10, StateKind::JJ, Basis::Z).unwrap()).unwrap();
        let grid = cdf_grid(&dist, 50);
        let h = 2.0 * PI / 50.0;
        for (p, v) in grid.iter().enumerate().take(50) {
            assert!((v - dist.cdf(-PI + h * p as f64)).abs() < 1e-13);
        }
        assert!((grid[50] - 1.0).abs() < 1e-15);
        assert!((dist.mass_within(0.0, PI) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sampling_is_deterministic() {
        let dist = distribution(&make_state::<f64>(8, StateKind::Optimal, Basis::Y).unwrap()).unwrap();
        let a = sample(&dist, 100, 7).unwrap();
        let b = sample(&dist, 100, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample(&dist, 100, 8).unwrap());
        assert!(sample(&dist, 0, 1).is_err());
        assert!(a.iter().all(|x| (-PI..PI).contains(x)));
    }

    #[test]
    fn explicit_period_override() {
        let dist = distribution(&make_state::<f64>(4, StateKind::Optimal, Basis::Y).unwrap()).unwrap();
        assert!(dist.clone().with_period(Period::Pi).is_err());
        let j0 = distribution(&make_state::<f64>(4, StateKind::J0, Basis::Z).unwrap()).unwrap();
        let as_two_pi = j0.with_period(Period::TwoPi).unwrap();
        assert!(holevo_variance(&as_two_pi).unwrap().is_infinite());
    }
}
