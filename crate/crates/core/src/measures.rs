//! Phase-uncertainty measures of a canonical phase distribution.
//!
//! Closed Fourier forms are used where they exist (standard variance, Süssman
//! length, confidence interval); entropy and the general Fisher information go
//! through panel quadrature.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_dist::{distribution, holevo_variance, holevo_variance_mod_pi, Period, PhaseDistribution, Spread};
use crate::quadrature::integrate_checked;
use crate::scalar::{from_i64, lit, to_f64, Real};
use crate::spin::SpinIndex;
use crate::states::{AngularState, StateKind};
use crate::su2::wigner_column;

/// Density values below this are left out of the Fisher quadrature.
pub const FISHER_DENSITY_FLOOR: f64 = 1e-14;

/// Confidence level reported in [`MeasureReport::l_c`].
pub const REPORT_CONFIDENCE: f64 = 2.0 / 3.0;

/// Width tolerance of the confidence-interval bisection.
const CONFIDENCE_TOLERANCE: f64 = 1e-10;

/// Golden-section stopping width for the peak search.
const PEAK_TOLERANCE: f64 = 1e-13;

/// Peak-search grid nodes per `(N + 2)`.
const PEAK_NODES_PER_PHOTON: usize = 16;

/// Standard deviation of the measured phase about `φ̄`, squared, with the
/// integration range one period centred on `φ̄`.
pub fn standard_variance<T: Real>(dist: &PhaseDistribution<T>) -> T {
    let mean = dist.mean_phase();
    let p0 = dist.coefficient(0).re;
    let pi2 = T::PI() * T::PI();
    let step = dist.period().step();
    let (base, scale) = match dist.period() {
        Period::TwoPi => (pi2 / lit(3.0), lit::<T>(4.0)),
        Period::Pi => (pi2 / lit(12.0), lit::<T>(1.0)),
    };
    let mut acc = base * p0;
    for (k, p) in dist.harmonics().filter(|(k, _)| *k > 0 && k % step == 0) {
        let kf = from_i64::<T>(k);
        let sign = if (k / step) % 2 == 0 { T::one() } else { -T::one() };
        let rotated = p * Complex::from_polar(T::one(), kf * mean);
        acc = acc + scale * sign * rotated.re / (kf * kf) * from_i64::<T>(step * step);
    }
    acc
}

/// `exp(−∫ P ln P)` with `0 ln 0 = 0`.
pub fn entropic_length<T: Real>(dist: &PhaseDistribution<T>) -> Result<T> {
    let entropy = integrate_checked(dist, "entropic length", false, |_, p, _| {
        if p > T::zero() {
            -p * p.ln()
        } else {
            T::zero()
        }
    })?;
    Ok(entropy.exp())
}

/// `(∫ P'²/P)^{−1/2}`; infinite for zero Fisher information.
///
/// States with a real amplitude `A(φ)`, `P ∝ A²`, use `4·⟨A'²⟩`, which by
/// Parseval equals `4 Σ μ² |c_μ|²` and is free of the `0/0` at density zeros.
/// Other distributions fall back to [`fisher_length_quadrature`].
pub fn fisher_length<T: Real>(dist: &PhaseDistribution<T>) -> Result<Spread<T>> {
    match dist.amplitude().filter(|c| has_real_amplitude(c)) {
        Some(c) => {
            let j = SpinIndex::for_photons(dist.photons());
            let (mut weighted, mut norm) = (T::zero(), T::zero());
            for (mu, a) in j.projections().zip(c) {
                let m = from_i64::<T>(mu.twice()) / lit(2.0);
                weighted = weighted + m * m * a.norm_sqr();
                norm = norm + a.norm_sqr();
            }
            Ok(length_from_information(lit::<T>(4.0) * weighted / norm))
        }
        None => fisher_length_quadrature(dist),
    }
}

/// Fisher length from direct quadrature of `P'²/P`, skipping nodes with
/// `P < 10⁻¹⁴`. The skipped contribution is bounded by `4 max A'² · |skipped set|`.
pub fn fisher_length_quadrature<T: Real>(dist: &PhaseDistribution<T>) -> Result<Spread<T>> {
    let floor = lit::<T>(FISHER_DENSITY_FLOOR);
    let information = integrate_checked(dist, "fisher length", true, |_, p, d| {
        if p < floor {
            T::zero()
        } else {
            d * d / p
        }
    })?;
    Ok(length_from_information(information))
}

fn length_from_information<T: Real>(information: T) -> Spread<T> {
    if to_f64(information) <= 1e-300 {
        Spread::Infinite
    } else {
        Spread::Finite(information.sqrt().recip())
    }
}

/// `c_{−μ} = e^{iα} conj(c_μ)` for one `α`: then `e^{−iα/2} Σ c_μ e^{−iμφ}` is real.
fn has_real_amplitude<T: Real>(c: &[Complex<T>]) -> bool {
    let Some((pivot, _)) = c
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).expect("finite amplitudes"))
    else {
        return false;
    };
    let n = c.len();
    let mirror = c[n - 1 - pivot];
    if c[pivot].norm() == T::zero() {
        return false;
    }
    let rotation = mirror / c[pivot].conj();
    // about 1e-12 in double precision
    let tol = T::epsilon() * lit(4096.0);
    if (rotation.norm() - T::one()).abs() > tol * lit(100.0) {
        return false;
    }
    (0..n).all(|i| (c[n - 1 - i] - rotation * c[i].conj()).norm() <= tol)
}

/// `(4 Σ_μ μ² I_{μ0}(π/2)²)^{−1/2}`, the Fisher length of `|j0⟩_z`.
pub fn fisher_length_closed_j0(photons: u32) -> Result<f64> {
    StateKind::J0.validate_photons(photons)?;
    let j = SpinIndex::for_photons(photons);
    let column = wigner_column::<f64>(j, SpinIndex::ZERO)?;
    let information: f64 = column
        .iter()
        .map(|(mu, v)| {
            let m = mu.twice() as f64 / 2.0;
            4.0 * m * m * v * v
        })
        .sum();
    Ok(information.sqrt().recip())
}

/// Half-width `L` of the interval `[φ̄ − L, φ̄ + L]` holding probability `confidence`.
pub fn confidence_interval<T: Real>(dist: &PhaseDistribution<T>, confidence: T) -> Result<T> {
    if !(confidence > T::zero() && confidence < T::one()) {
        return Err(Error::domain(format!(
            "confidence level must lie in (0, 1), got {confidence}"
        )));
    }
    let center = dist.mean_phase();
    let (mut lo, mut hi) = (T::zero(), dist.period().half_length::<T>());
    let tol = lit::<T>(CONFIDENCE_TOLERANCE).max(T::epsilon() * hi * lit(4.0));
    while hi - lo > tol {
        let mid = (lo + hi) / lit(2.0);
        if dist.mass_within(center, mid) < confidence {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / lit(2.0))
}

/// `1 / max P`.
///
/// The maximum is bracketed on a uniform grid and refined by golden-section
/// search; `φ̄` is tried as a second seed.
pub fn reciprocal_peak<T: Real>(dist: &PhaseDistribution<T>) -> T {
    let points = PEAK_NODES_PER_PHOTON * (dist.photons() as usize + 2);
    let h = dist.period().length::<T>() / from_i64::<T>(points as i64);
    let grid = dist.density_grid(T::zero(), points);
    let (best, _) = grid.iter().enumerate().fold(
        (0, T::neg_infinity()),
        |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
    );
    let seed = dist.lower_edge() + h * from_i64::<T>(best as i64);
    let from_grid = golden_maximum(dist, seed - h, seed + h);
    let mean = dist.mean_phase();
    let from_mean = golden_maximum(dist, mean - h, mean + h);
    from_grid.max(from_mean).recip()
}

fn golden_maximum<T: Real>(dist: &PhaseDistribution<T>, mut a: T, mut b: T) -> T {
    let ratio = lit::<T>(0.5 * (5f64.sqrt() - 1.0));
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (dist.density(x1), dist.density(x2));
    let tol = lit::<T>(PEAK_TOLERANCE).max(T::epsilon() * lit(16.0));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = dist.density(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = dist.density(x1);
        }
    }
    f1.max(f2).max(dist.density((a + b) / lit(2.0)))
}

/// `1 / ∫ P²`: `2π / Σ|P_k|²`, or `π / Σ|P_k|²` over even `k` for period π.
pub fn sussman_length<T: Real>(dist: &PhaseDistribution<T>) -> T {
    let sum: T = dist.coefficients().iter().map(|p| p.norm_sqr()).sum();
    dist.period().length::<T>() / sum
}

/// `⟨sin²(φ − φ̄)⟩ = ½(1 − Re(⟨e^{2iφ}⟩ e^{−2iφ̄}))`.
pub fn sin_squared_expectation<T: Real>(dist: &PhaseDistribution<T>) -> T {
    let mean = dist.mean_phase();
    let second = dist.coefficient(-2) * Complex::from_polar(T::one(), -(mean + mean));
    (T::one() - second.re) / lit(2.0)
}

/// All measures of one state, at the period detected for its distribution.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Real + Serialize")]
pub struct MeasureReport<T> {
    pub photons: u32,
    pub kind: Option<StateKind>,
    pub period: Period,
    pub mean_phase: T,
    pub standard_variance: T,
    pub delta_phi: T,
    /// Holevo variance; the mod-π variance for period π.
    pub holevo_variance: Spread<T>,
    pub delta_phi_h: Spread<T>,
    pub l_rp: T,
    pub l_s: T,
    pub l_h: T,
    /// Confidence half-width at probability 2/3.
    pub l_c: T,
    pub l_f: Spread<T>,
}

/// Measures of `state` with its natural period.
pub fn report<T: Real>(state: &AngularState<T>) -> Result<MeasureReport<T>> {
    report_distribution(&distribution(state)?)
}

/// Measures of an already computed distribution.
pub fn report_distribution<T: Real>(dist: &PhaseDistribution<T>) -> Result<MeasureReport<T>> {
    let standard = standard_variance(dist);
    let holevo = match dist.period() {
        Period::TwoPi => holevo_variance(dist)?,
        Period::Pi => holevo_variance_mod_pi(dist),
    };
    Ok(MeasureReport {
        photons: dist.photons(),
        kind: None,
        period: dist.period(),
        mean_phase: dist.mean_phase(),
        standard_variance: standard,
        delta_phi: standard.sqrt(),
        holevo_variance: holevo,
        delta_phi_h: holevo.map(|v| v.sqrt()),
        l_rp: reciprocal_peak(dist),
        l_s: sussman_length(dist),
        l_h: entropic_length(dist)?,
        l_c: confidence_interval(dist, lit(REPORT_CONFIDENCE))?,
        l_f: fisher_length(dist)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, panel_count};
    use crate::states::{make_state, Basis};
    use std::f64::consts::PI;

    fn dist(n: u32, kind: StateKind) -> PhaseDistribution<f64> {
        distribution(&make_state::<f64>(n, kind, Basis::Y).unwrap()).unwrap()
    }

    #[test]
    fn uniform_measures() {
        let two_pi = PhaseDistribution::<f64>::uniform(4, Period::TwoPi);
        let pi = PhaseDistribution::<f64>::uniform(4, Period::Pi);
        assert!((standard_variance(&two_pi) - PI * PI / 3.0).abs() < 1e-14);
        assert!((standard_variance(&pi) - PI * PI / 12.0).abs() < 1e-14);
        assert!((entropic_length(&two_pi).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((entropic_length(&pi).unwrap() - PI).abs() < 1e-12);
        assert!(fisher_length(&two_pi).unwrap().is_infinite());
        assert!((confidence_interval(&two_pi, 2.0 / 3.0).unwrap() - 2.0 * PI / 3.0).abs() < 1e-9);
        assert!((reciprocal_peak(&two_pi) - 2.0 * PI).abs() < 1e-12);
        assert!((sussman_length(&two_pi) - 2.0 * PI).abs() < 1e-14);
        assert!((sin_squared_expectation(&two_pi) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_photon_balanced_state() {
        let d = dist(2, StateKind::J0);
        assert!((fisher_length(&d).unwrap().value() - 0.5).abs() < 1e-14);
        assert!((fisher_length_closed_j0(2).unwrap() - 0.5).abs() < 1e-15);
        assert!((sin_squared_expectation(&d) - 0.25).abs() < 1e-15);
        let r = report_distribution(&d).unwrap();
        assert!((r.holevo_variance.value() - 0.75).abs() < 1e-14);
        assert!(fisher_length_closed_j0(3).is_err());
    }

    #[test]
    fn optimal_report_matches_standalone_measures() {
        let state = make_state::<f64>(4, StateKind::Optimal, Basis::Y).unwrap();
        let d = distribution(&state).unwrap();
        let r = report(&state).unwrap();
        assert!((r.holevo_variance.value() - 1.0 / 3.0).abs() < 1e-13);
        assert_eq!(r.standard_variance.to_bits(), standard_variance(&d).to_bits());
        assert_eq!(r.delta_phi.to_bits(), standard_variance(&d).sqrt().to_bits());
        assert_eq!(r.l_rp.to_bits(), reciprocal_peak(&d).to_bits());
        assert_eq!(r.l_s.to_bits(), sussman_length(&d).to_bits());
        assert_eq!(r.l_h.to_bits(), entropic_length(&d).unwrap().to_bits());
        assert_eq!(r.l_c.to_bits(), confidence_interval(&d, 2.0 / 3.0).unwrap().to_bits());
        assert_eq!(r.l_f, fisher_length(&d).unwrap());
        assert_eq!(r.mean_phase.to_bits(), d.mean_phase().to_bits());
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for kind in StateKind::ALL {
            for n in [2u32, 20, 120] {
                let d = dist(n, kind);
                let panels = panel_count(&d);
                let mean = d.mean_phase();
                let lo = d.lower_edge();
                let len = d.period().length::<f64>();
                let centred = integrate(&d, panels, false, |phi, p, _| {
                    let t = (phi - mean - lo).rem_euclid(len) + lo;
                    t * t * p
                });
                // the centred integrand has a kink at φ̄ ± L/2, so compare loosely here
                assert!((centred - standard_variance(&d)).abs() < 1e-5, "{kind} {n}");
                let square = integrate(&d, panels, false, |_, p, _| p * p);
                assert!((1.0 / square - sussman_length(&d)).abs() < 1e-8 * sussman_length(&d));
            }
        }
    }

    #[test]
    fn fisher_routes_agree() {
        for n in (2..=40).step_by(2) {
            let d = dist(n, StateKind::J0);
            let closed = fisher_length_closed_j0(n).unwrap();
            let amplitude = fisher_length(&d).unwrap().value();
            let quadrature = fisher_length_quadrature(&d).unwrap().value();
            assert!((closed - amplitude).abs() < 1e-12);
            assert!((closed - quadrature).abs() < 1e-6, "{n}: {closed} vs {quadrature}");
        }
    }

    #[test]
    fn confidence_interval_is_monotone() {
        let d = dist(30, StateKind::JJ);
        let mut last = 0.0;
        for c in [0.1, 0.3, 0.5, 2.0 / 3.0, 0.9, 0.99] {
            let l = confidence_interval(&d, c).unwrap();
            assert!(l > last);
            assert!((d.mass_within(d.mean_phase(), l) - c).abs() < 1e-8);
            last = l;
        }
        assert!(confidence_interval(&d, 1.0).is_err());
    }

    #[test]
    fn peak_of_symmetric_state_is_at_zero() {
        let d = dist(50, StateKind::Optimal);
        assert!((reciprocal_peak(&d) - 1.0 / d.density(0.0)).abs() < 1e-12);
    }
}
