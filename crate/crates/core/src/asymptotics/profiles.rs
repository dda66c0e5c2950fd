//! Approximate phase densities of `|j0⟩_z` and of the optimal state.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::special::{bessel_j_scaled, gamma_fn};
use crate::error::{Error, Result};
use crate::phase_dist::distribution;
use crate::states::{make_state, Basis, StateKind};

/// `Γ(3/4)²`.
pub(crate) fn gamma_three_quarters_sq() -> f64 {
    gamma_fn(0.75).expect("positive argument").powi(2)
}

/// The approximations studied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// Bessel-function approximation of the `|j0⟩_z` density.
    J0Bessel,
    /// Finite sum approximation of the `|j0⟩_z` density.
    J0Intermediate,
    /// Large-`N` limit of the optimal-state density.
    OptimalLorentzianLike,
}

/// An approximate density `P(φ)` for `N` photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticProfile {
    kind: ProfileKind,
}

impl AsymptoticProfile {
    pub fn new(kind: ProfileKind) -> Self {
        AsymptoticProfile { kind }
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// The approximate density at `φ` for `photons` photons.
    pub fn density(&self, photons: u32, phi: f64) -> f64 {
        let j = u64::from(photons / 2);
        match self.kind {
            ProfileKind::J0Bessel => j0_bessel_density(j, phi),
            ProfileKind::J0Intermediate => j0_intermediate_density(j, phi),
            ProfileKind::OptimalLorentzianLike => optimal_asymptotic_density(photons, phi),
        }
    }

    /// `f` with `P(φ) ≈ N f(Nφ)` and `∫_ℝ f = 1`, when the approximation has that form.
    pub fn scaled(&self, x: f64) -> Option<f64> {
        match self.kind {
            // x = Nφ = 2jφ
            ProfileKind::J0Bessel => Some(0.5 * j0_bessel_profile(0.5 * x)),
            ProfileKind::J0Intermediate => None,
            ProfileKind::OptimalLorentzianLike => Some(optimal_profile(x)),
        }
    }
}

/// `g(x) = (Γ²(3/4)/(π√2)) J²_{1/4}(|x|)/√|x|`, normalized over the real line;
/// the `|j0⟩` density is `P(φ) ≈ j g(jφ)`.
pub fn j0_bessel_profile(x: f64) -> f64 {
    let scaled = bessel_j_scaled(0.25, x.abs());
    gamma_three_quarters_sq() / (PI * std::f64::consts::SQRT_2) * scaled * scaled
}

/// `P_j(φ) = ((2j+1)/2π)(Γ²(3/4)/√2) J²_{1/4}(|jφ|)/√|jφ|`, finite at `φ = 0`.
pub fn j0_bessel_density(j: u64, phi: f64) -> f64 {
    let jf = j as f64;
    0.5 * (2.0 * jf + 1.0) * j0_bessel_profile(jf * phi)
}

/// `(2/π²) |Σ_μ e^{−2iμφ} / [j(j+1) − (2μ)²]^{1/4}|²` over `μ = −j/2..j/2`
/// in unit steps (half-integer `μ` for odd `j`).
pub fn j0_intermediate_density(j: u64, phi: f64) -> f64 {
    let jf = j as f64;
    let base = jf * (jf + 1.0);
    let j = j as i64;
    // m = 2μ runs over −j, −j+2, …, j; pair ±m to keep the sum exactly even in φ
    let mut sum = 0.0;
    let mut m = j;
    while m >= 0 {
        let mf = m as f64;
        let term = (mf * phi).cos() / (base - mf * mf).powf(0.25);
        sum += if m == 0 { term } else { 2.0 * term };
        m -= 2;
    }
    2.0 / (PI * PI) * sum * sum
}

/// Real amplitude of the optimal profile, `g(x) = 2√π cos(x/2)/(x² − π²)`,
/// evaluated through `−√π sinc((|x|−π)/2)/(|x|+π)` so `x = ±π` is regular.
pub fn optimal_profile_amplitude(x: f64) -> f64 {
    let x = x.abs();
    -PI.sqrt() * sinc(0.5 * (x - PI)) / (x + PI)
}

/// dg/dx of [`optimal_profile_amplitude`].
pub(crate) fn optimal_profile_amplitude_derivative(x: f64) -> f64 {
    let sign = x.signum();
    let x = x.abs();
    let u = 0.5 * (x - PI);
    let d = -PI.sqrt() * (0.5 * sinc_derivative(u) / (x + PI) - sinc(u) / ((x + PI) * (x + PI)));
    sign * d
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

fn sinc_derivative(u: f64) -> f64 {
    if u.abs() < 1e-3 {
        -u / 3.0 + u * u * u / 30.0
    } else {
        (u * u.cos() - u.sin()) / (u * u)
    }
}

/// `f(x) = 2π(1 + cos x)/(x² − π²)²`, so that `P(φ) ≈ N f(Nφ)`.
pub fn optimal_profile(x: f64) -> f64 {
    let g = optimal_profile_amplitude(x);
    g * g
}

/// `P(φ) ≈ 2πN(1 + cos Nφ)/[(Nφ)² − π²]²`.
pub fn optimal_asymptotic_density(photons: u32, phi: f64) -> f64 {
    let n = f64::from(photons);
    n * optimal_profile(n * phi)
}

/// Largest value of `f` on `samples` equally spaced points of `[center − half_width, center + half_width]`.
pub fn envelope_maximum(f: impl Fn(f64) -> f64, center: f64, half_width: f64, samples: usize) -> f64 {
    let samples = samples.max(2);
    (0..samples)
        .map(|i| f(center - half_width + 2.0 * half_width * i as f64 / (samples - 1) as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Envelope maxima of the exact, intermediate and Bessel `|j0⟩` densities at one phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproximationRow {
    pub phi: f64,
    pub exact: f64,
    pub intermediate: f64,
    pub bessel: f64,
}

/// Samples per envelope window.
const ENVELOPE_SAMPLES: usize = 65;

/// Envelope maxima over windows of two oscillation periods, `[φ − 2π/N, φ + 2π/N]`.
pub fn compare_approximations(photons: u32, phis: &[f64]) -> Result<Vec<ApproximationRow>> {
    StateKind::J0.validate_photons(photons)?;
    if let Some(bad) = phis.iter().find(|p| !p.is_finite()) {
        return Err(Error::domain(format!("phase grid contains {bad}")));
    }
    let exact = distribution(&make_state::<f64>(photons, StateKind::J0, Basis::Y)?)?;
    let j = u64::from(photons / 2);
    let half_width = 2.0 * PI / f64::from(photons);
    Ok(phis
        .iter()
        .map(|&phi| ApproximationRow {
            phi,
            exact: envelope_maximum(|x| exact.density(x), phi, half_width, ENVELOPE_SAMPLES),
            intermediate: envelope_maximum(|x| j0_intermediate_density(j, x), phi, half_width, ENVELOPE_SAMPLES),
            bessel: envelope_maximum(|x| j0_bessel_density(j, x), phi, half_width, ENVELOPE_SAMPLES),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::integrate_panels;
    use crate::phase_dist::optimal_density_closed;

    #[test]
    fn optimal_profile_values() {
        let n = 1600;
        assert!((optimal_asymptotic_density(n, 0.0) - 4.0 * n as f64 / PI.powi(3)).abs() < 1e-9);
        let at_pole = optimal_profile(PI);
        assert!((at_pole - 1.0 / (4.0 * PI)).abs() < 1e-12);
        assert!((optimal_profile(PI + 1e-9) - at_pole).abs() < 1e-9);
        for eps in [1e-3, 0.1, 2.0] {
            let x = PI + eps;
            let direct = 2.0 * PI * (1.0 + x.cos()) / (x * x - PI * PI).powi(2);
            assert!((optimal_profile(x) - direct).abs() < 1e-9 * direct.max(1e-3));
            assert_eq!(optimal_profile(-x), optimal_profile(x));
        }
    }

    #[test]
    fn optimal_profile_matches_exact_density() {
        // zeros sit at (N+2)φ = (2m+1)π exactly but at Nφ = (2m+1)π in the limit form,
        // so relative agreement is checked where the density is not near a zero
        let peak = optimal_density_closed(1600, 0.0);
        for i in 0..=200 {
            let phi = 0.01 * i as f64 / 200.0;
            let exact = optimal_density_closed(1600, phi);
            let approx = optimal_asymptotic_density(1600, phi);
            assert!((approx - exact).abs() < 0.01 * peak, "φ = {phi}");
            if exact > 0.1 * peak {
                assert!((approx - exact).abs() < 0.01 * exact, "φ = {phi}");
            }
        }
    }

    #[test]
    fn amplitude_derivative_matches_finite_difference() {
        for x in [0.0, 0.7, PI - 1e-4, PI, 4.0, -2.5, 30.0] {
            let h = 1e-6;
            let fd = (optimal_profile_amplitude(x + h) - optimal_profile_amplitude(x - h)) / (2.0 * h);
            assert!((fd - optimal_profile_amplitude_derivative(x)).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn profiles_are_normalized() {
        let x_max = 4000.0;
        let optimal = 2.0 * integrate_panels(0.0, x_max, PI / 8.0, optimal_profile) + 4.0 * PI / (3.0 * x_max.powi(3));
        assert!((optimal - 1.0).abs() < 1e-10);
        let a = std::f64::consts::SQRT_2 * gamma_three_quarters_sq() / (PI * PI);
        let bessel = 2.0 * integrate_panels(0.0, x_max, PI / 8.0, j0_bessel_profile) + 2.0 * a / x_max.sqrt();
        assert!((bessel - 1.0).abs() < 1e-6, "{bessel}");
    }

    #[test]
    fn bessel_density_normalized_on_half_period() {
        let j = 10_000;
        let total = 2.0 * integrate_panels(0.0, PI / 2.0, PI / (8.0 * j as f64), |phi| j0_bessel_density(j, phi));
        // the x^{-3/2} tail beyond jπ/2 holds 2A/√(jπ/2) of the limiting mass
        let a = std::f64::consts::SQRT_2 * gamma_three_quarters_sq() / (PI * PI);
        let jf = j as f64;
        let expected = (1.0 + 0.5 / jf) * (1.0 - 2.0 * a / (jf * PI / 2.0).sqrt());
        assert!((total - expected).abs() < 1e-4, "{total} vs {expected}");
        assert!((total - 1.0).abs() < 5e-3);
    }

    #[test]
    fn bessel_tail_exponent() {
        let j = 25_600;
        let envelope = |phi: f64| envelope_maximum(|x| j0_bessel_density(j, x), phi, 2.0 * PI / j as f64, 129);
        let slope = (envelope(0.5).ln() - envelope(0.05).ln()) / (0.5f64.ln() - 0.05f64.ln());
        assert!((slope + 1.5).abs() < 0.05, "{slope}");
    }

    #[test]
    fn intermediate_density_properties() {
        let j = 400;
        for phi in [0.0, 0.013, 0.3] {
            assert_eq!(j0_intermediate_density(j, phi), j0_intermediate_density(j, -phi));
        }
        let total = 2.0
            * integrate_panels(0.0, PI / 2.0, PI / (8.0 * j as f64), |phi| {
                j0_intermediate_density(j, phi)
            });
        assert!((total - 1.0).abs() < 1e-2, "{total}");
        // odd j sums over half-integer μ
        assert!(j0_intermediate_density(401, 0.0) > 0.0);
    }

    #[test]
    fn scaled_forms_integrate_to_one() {
        let profile = AsymptoticProfile::new(ProfileKind::OptimalLorentzianLike);
        let total = 2.0 * integrate_panels(0.0, 4000.0, PI / 8.0, |x| profile.scaled(x).unwrap());
        assert!((total - 1.0).abs() < 1e-6);
        assert!(AsymptoticProfile::new(ProfileKind::J0Intermediate)
            .scaled(1.0)
            .is_none());
        let bessel = AsymptoticProfile::new(ProfileKind::J0Bessel);
        assert!((bessel.density(4000, 0.001) - j0_bessel_density(2000, 0.001)).abs() < 1e-12);
    }

    #[test]
    fn comparison_rejects_odd_photon_numbers() {
        assert!(compare_approximations(7, &[0.1]).is_err());
        let rows = compare_approximations(40, &[0.1, 0.2]).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows
            .iter()
            .all(|r| r.exact > 0.0 && r.bessel > 0.0 && r.intermediate > 0.0));
    }
}
