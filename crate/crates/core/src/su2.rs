//! Interferometer matrix elements `I^j_{μν}(π/2)` and the y↔z basis overlap.
//!
//! Small multiplets (`2j ≤ 80`) use the explicit alternating sum, evaluated with
//! exact 128-bit integer arithmetic so no cancellation is lost. Larger
//! multiplets use the three-term recurrence in `μ`, run inward from both edges
//! and matched in the oscillatory centre of the column.

use num_complex::Complex;

use crate::asymptotics::special::ln_factorial;
use crate::error::{Error, Result};
use crate::scalar::{from_i64, lit, to_f64, Real};
use crate::spin::SpinIndex;

/// Largest `2j` evaluated with the explicit sum.
pub const DIRECT_SUM_LIMIT: i64 = 80;

/// Half-width of the overlap used to match the two recurrence passes.
const MATCH_HALF_WIDTH: usize = 8;

/// One column `ν` of the interferometer matrix at `β = π/2`, indexed `μ = −j..j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerColumn<T> {
    twice_j: i64,
    twice_nu: i64,
    values: Vec<T>,
    max_abs_error: T,
}

impl<T: Real> WignerColumn<T> {
    pub fn j(&self) -> SpinIndex {
        SpinIndex::from_twice(self.twice_j)
    }

    pub fn nu(&self) -> SpinIndex {
        SpinIndex::from_twice(self.twice_nu)
    }

    /// Values ordered by `μ = −j, …, j`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Error estimate; the unitarity defect of the column before it was renormalized.
    pub fn max_abs_error(&self) -> T {
        self.max_abs_error
    }

    /// `I^j_{μν}` for the column's `ν`.
    pub fn get(&self, mu: SpinIndex) -> Option<T> {
        self.j().check_projection(mu).ok()?;
        Some(self.values[self.j().offset_of(mu)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (SpinIndex, T)> + '_ {
        self.j().projections().zip(self.values.iter().copied())
    }
}

fn check_indices(j: SpinIndex, mu: SpinIndex, nu: SpinIndex) -> Result<()> {
    j.check_projection(mu)?;
    j.check_projection(nu)
}

/// `I^j_{μν}(π/2)`.
///
/// Exact to rounding for `2j ≤ 80`. Beyond that the element is read from the
/// recurrence column, whose [`WignerColumn::max_abs_error`] bounds its error.
pub fn wigner_element<T: Real>(j: SpinIndex, mu: SpinIndex, nu: SpinIndex) -> Result<T> {
    check_indices(j, mu, nu)?;
    if j.twice() <= DIRECT_SUM_LIMIT {
        return Ok(lit(direct_element(j.twice(), mu.twice(), nu.twice())));
    }
    let column = wigner_column::<T>(j, nu)?;
    Ok(column.values[j.offset_of(mu)])
}

/// All `I^j_{μν}(π/2)` for fixed `ν`.
pub fn wigner_column<T: Real>(j: SpinIndex, nu: SpinIndex) -> Result<WignerColumn<T>> {
    j.check_projection(nu)?;
    let (tj, tn) = (j.twice(), nu.twice());
    let (values, defect) = if tj <= DIRECT_SUM_LIMIT {
        let values: Vec<f64> = j.projections().map(|mu| direct_element(tj, mu.twice(), tn)).collect();
        let norm: f64 = values.iter().map(|v| v * v).sum();
        (values, (norm - 1.0).abs())
    } else {
        recurrence_column::<T>(tj, tn)?
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric(
            "su2",
            "wigner_column",
            format!("non-finite element for 2j = {tj}, 2ν = {tn}"),
        ));
    }
    Ok(WignerColumn {
        twice_j: tj,
        twice_nu: tn,
        values: values.into_iter().map(lit).collect(),
        max_abs_error: lit(defect.max(f64::EPSILON)),
    })
}

/// `_y⟨jμ|jν⟩_z = e^{i(π/2)(ν−μ)} I^j_{μν}(π/2)`.
pub fn basis_overlap<T: Real>(j: SpinIndex, mu: SpinIndex, nu: SpinIndex) -> Result<Complex<T>> {
    let element = wigner_element::<T>(j, mu, nu)?;
    Ok(quarter_turn::<T>(nu.twice() - mu.twice()) * element)
}

/// `e^{i(π/2)·d}` for `d = twice_delta / 2`, exact because `d` is an integer.
pub(crate) fn quarter_turn<T: Real>(twice_delta: i64) -> Complex<T> {
    debug_assert!(twice_delta % 2 == 0);
    match (twice_delta / 2).rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Explicit sum in its valid sector `μ − ν ≥ 0`, `μ + ν ≥ 0`.
fn direct_valid(tj: i64, tm: i64, tn: i64) -> f64 {
    let j_minus_mu = (tj - tm) / 2;
    let j_plus_mu = (tj + tm) / 2;
    let j_minus_nu = (tj - tn) / 2;
    let j_plus_nu = (tj + tn) / 2;
    let sum: i128 = (0..=j_minus_mu)
        .map(|m| {
            let term = binomial(j_minus_nu, m) * binomial(j_plus_nu, j_minus_mu - m);
            if (j_minus_mu - m) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    if sum == 0 {
        return 0.0;
    }
    let log_ratio = 0.5
        * (ln_factorial(j_minus_mu as u64) + ln_factorial(j_plus_mu as u64)
            - ln_factorial(j_minus_nu as u64)
            - ln_factorial(j_plus_nu as u64));
    let log_magnitude = log_ratio - 0.5 * tj as f64 * std::f64::consts::LN_2 + (sum.unsigned_abs() as f64).ln();
    log_magnitude.exp().copysign(sum as f64)
}

fn parity_sign(exponent: i64) -> f64 {
    if exponent.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Explicit sum with the symmetry relations mapping every index pair into the valid sector.
pub(crate) fn direct_element(tj: i64, tm: i64, tn: i64) -> f64 {
    let sign_swap = parity_sign((tm - tn) / 2);
    if tm - tn >= 0 && tm + tn >= 0 {
        direct_valid(tj, tm, tn)
    } else if tn - tm >= 0 && tn + tm >= 0 {
        sign_swap * direct_valid(tj, tn, tm)
    } else if tm - tn >= 0 {
        direct_valid(tj, -tn, -tm)
    } else {
        sign_swap * direct_valid(tj, -tm, -tn)
    }
}

/// Column by the three-term recurrence
/// `√((j−μ)(j+μ+1)) I_{μ+1} + √((j+μ)(j−μ+1)) I_{μ−1} = −2ν I_μ`.
///
/// Returns the renormalized column (in `f64`) and the unitarity defect of the
/// edge-seeded column before renormalization.
fn recurrence_column<T: Real>(tj: i64, tn: i64) -> Result<(Vec<f64>, f64)> {
    let n = (tj + 1) as usize;
    if n < 3 {
        let values: Vec<f64> = (0..n).map(|i| direct_element(tj, 2 * i as i64 - tj, tn)).collect();
        return Ok((values, 0.0));
    }
    let mid = n / 2;
    let half_width = mid.min(MATCH_HALF_WIDTH);
    let lo = mid - half_width;
    let hi = (mid + half_width).min(n - 1);

    let raise = |tm: i64| -> T { lit::<T>(0.5) * from_i64::<T>((tj - tm) * (tj + tm + 2)).sqrt() };
    let lower = |tm: i64| -> T { lit::<T>(0.5) * from_i64::<T>((tj + tm) * (tj - tm + 2)).sqrt() };
    let two_nu: T = from_i64(tn);
    let big = T::max_value().sqrt();
    let ln_big = to_f64(big).ln();

    // inward from μ = j
    let mut down = vec![T::zero(); n];
    let mut down_log_scale = 0.0;
    down[n - 1] = T::one();
    for i in (lo + 1..n).rev() {
        let tm = 2 * i as i64 - tj;
        let next = if i + 1 < n { down[i + 1] } else { T::zero() };
        let value = (-two_nu * down[i] - raise(tm) * next) / lower(tm);
        down[i - 1] = value;
        if value.abs() > big {
            down[i - 1..].iter_mut().for_each(|v| *v = *v / big);
            down_log_scale += ln_big;
        }
    }

    // inward from μ = −j
    let mut up = vec![T::zero(); n];
    let mut up_log_scale = 0.0;
    up[0] = T::one();
    for i in 0..hi {
        let tm = 2 * i as i64 - tj;
        let prev = if i > 0 { up[i - 1] } else { T::zero() };
        let value = (-two_nu * up[i] - lower(tm) * prev) / raise(tm);
        up[i + 1] = value;
        if value.abs() > big {
            up[..=i + 1].iter_mut().for_each(|v| *v = *v / big);
            up_log_scale += ln_big;
        }
    }

    // |I_{±j,ν}| = 2^{-j} √C(2j, j+ν); I_{jν} > 0 and I_{−j,ν} = (−1)^{j+ν} I_{jν}
    let j_plus_nu = (tj + tn) / 2;
    let log_edge = -0.5 * tj as f64 * std::f64::consts::LN_2
        + 0.5 * (ln_factorial(tj as u64) - ln_factorial(j_plus_nu as u64) - ln_factorial((tj - tn) as u64 / 2));
    let down_factor = (log_edge + down_log_scale).exp();
    let up_factor = parity_sign(j_plus_nu) * (log_edge + up_log_scale).exp();

    let scaled_down: Vec<f64> = down[lo..].iter().map(|v| to_f64(*v) * down_factor).collect();
    let scaled_up: Vec<f64> = up[..=hi].iter().map(|v| to_f64(*v) * up_factor).collect();

    let (mut cross, mut auto) = (0.0, 0.0);
    for i in lo..=hi {
        let d = scaled_down[i - lo];
        let u = scaled_up[i];
        cross += d * u;
        auto += u * u;
    }
    if !(auto > 0.0) || !cross.is_finite() {
        return Err(Error::numeric(
            "su2",
            "wigner_column",
            format!("recurrence passes do not overlap for 2j = {tj}, 2ν = {tn}"),
        ));
    }
    let fit = cross / auto;

    let mut values: Vec<f64> = scaled_up[..lo].iter().map(|u| u * fit).collect();
    values.extend_from_slice(&scaled_down);
    let norm_sqr: f64 = values.iter().map(|v| v * v).sum();
    if !(norm_sqr > 0.0) || !norm_sqr.is_finite() {
        return Err(Error::numeric(
            "su2",
            "wigner_column",
            format!("degenerate column norm {norm_sqr}"),
        ));
    }
    let defect = (norm_sqr - 1.0).abs();
    let inv = norm_sqr.sqrt().recip();
    values.iter_mut().for_each(|v| *v *= inv);
    Ok((values, defect))
}

/// Recurrence path forced regardless of size, for cross-checking the direct sum.
#[cfg(test)]
pub(crate) fn recurrence_column_f64(j: SpinIndex, nu: SpinIndex) -> (Vec<f64>, f64) {
    recurrence_column::<f64>(j.twice(), nu.twice()).unwrap()
}
