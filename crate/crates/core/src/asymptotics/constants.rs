//! Large-`N` scaling constants of every uncertainty measure, each computed by
//! its own route from the asymptotic profiles.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use super::integrate_panels;
use super::profiles::{
    gamma_three_quarters_sq, j0_bessel_profile, optimal_profile, optimal_profile_amplitude_derivative,
};
use super::special::gamma_fn;
use crate::error::{Error, Result};
use crate::states::StateKind;

/// How a constant was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantRoute {
    Series,
    ClosedForm,
    RootFinding,
    ProfileIntegral,
}

/// One measure's large-`N` constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingConstant {
    /// Scaled measure, e.g. `n_l_s` for `N·L_S`.
    pub measure: &'static str,
    /// Power of `N` the scaled measure grows with (`1` when it tends to the constant).
    pub scaling: &'static str,
    pub value: f64,
    pub route: ConstantRoute,
}

/// Upper cut-off of the `|j0⟩` profile integrals; tails beyond it are added analytically.
const J0_CUTOFF: f64 = 20_000.0;
/// Upper cut-off of the optimal profile integrals.
const OPTIMAL_CUTOFF: f64 = 2_000.0;
/// Panel width for profile quadrature; the profiles oscillate with period π or 2π.
const PROFILE_PANEL: f64 = PI / 8.0;

/// The constants for `Optimal` or `J0`.
pub fn scaling_constants(kind: StateKind) -> Result<Vec<ScalingConstant>> {
    match kind {
        StateKind::Optimal => Ok(optimal_constants()),
        StateKind::J0 => j0_constants(),
        other => Err(Error::domain(format!("no asymptotic profile for the '{other}' state"))),
    }
}

fn constant(measure: &'static str, scaling: &'static str, value: f64, route: ConstantRoute) -> ScalingConstant {
    ScalingConstant {
        measure,
        scaling,
        value,
        route,
    }
}

fn j0_constants() -> Result<Vec<ScalingConstant>> {
    let holevo = j0_holevo_series();
    let standard = j0_standard_closed();
    let l_rp = 4.0 * PI * (gamma_fn(1.25)? / gamma_fn(0.75)?).powi(2);
    let x_c = j0_confidence_root(1.0 / 3.0)?;
    let values = [
        ("sqrt_n_holevo_variance", "N^-1/2", holevo, ConstantRoute::Series),
        (
            "sqrt_n_standard_variance",
            "N^-1/2",
            standard,
            ConstantRoute::ClosedForm,
        ),
        ("n_delta_phi", "N^3/4", standard.sqrt(), ConstantRoute::ClosedForm),
        ("n_delta_phi_h", "N^3/4", holevo.sqrt(), ConstantRoute::Series),
        ("n_l_rp", "1", l_rp, ConstantRoute::ClosedForm),
        ("n_l_s", "1", j0_sussman(), ConstantRoute::ProfileIntegral),
        ("n_l_h", "1", j0_entropic(), ConstantRoute::ProfileIntegral),
        ("n_l_c", "1", 2.0 * x_c, ConstantRoute::RootFinding),
        ("n_l_f", "1", SQRT_2, ConstantRoute::ClosedForm),
    ];
    Ok(values.into_iter().map(|(m, s, v, r)| constant(m, s, v, r)).collect())
}

fn optimal_constants() -> Vec<ScalingConstant> {
    let values = [
        ("n_delta_phi", "1", PI, ConstantRoute::ClosedForm),
        ("n_delta_phi_h", "1", PI, ConstantRoute::ClosedForm),
        ("n_l_rp", "1", PI.powi(3) / 4.0, ConstantRoute::ClosedForm),
        ("n_l_s", "1", optimal_sussman(), ConstantRoute::ProfileIntegral),
        ("n_l_h", "1", optimal_entropic(), ConstantRoute::ProfileIntegral),
        (
            "n_l_c",
            "1",
            optimal_confidence_root(1.0 / 3.0),
            ConstantRoute::RootFinding,
        ),
        ("n_l_f", "1", optimal_fisher(), ConstantRoute::ProfileIntegral),
    ];
    values.into_iter().map(|(m, s, v, r)| constant(m, s, v, r)).collect()
}

/// `√N V ≈ (2/π²) Γ²(3/4) ∫_0^{π/2} sin²φ/φ^{3/2} dφ`, summed as its power series.
pub(crate) fn j0_holevo_series() -> f64 {
    let mut power_over_factorial = 1.0;
    let mut sum = 0.0;
    for n in 1..=60u32 {
        let two_n = f64::from(2 * n);
        power_over_factorial *= PI * PI / ((two_n - 1.0) * two_n);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * power_over_factorial / (4.0 * f64::from(n) - 1.0);
    }
    2.0 / (PI * PI) * gamma_three_quarters_sq() * (2.0 / PI).sqrt() * sum
}

/// `√N Δφ² ≈ √(2/π) Γ²(3/4) / 3`.
pub(crate) fn j0_standard_closed() -> f64 {
    (2.0 / PI).sqrt() * gamma_three_quarters_sq() / 3.0
}

/// Coefficient `A` of the profile tail `g(x) ≈ A sin²(x + π/8) x^{−3/2}`.
fn j0_tail_amplitude() -> f64 {
    SQRT_2 * gamma_three_quarters_sq() / (PI * PI)
}

/// `N L_S = 2 / ∫ g²`.
fn j0_sussman() -> f64 {
    let a = j0_tail_amplitude();
    let body = 2.0 * integrate_panels(0.0, J0_CUTOFF, PROFILE_PANEL, |x| j0_bessel_profile(x).powi(2));
    // ⟨sin⁴⟩ = 3/8
    let tail = 2.0 * (3.0 / 8.0) * a * a / (2.0 * J0_CUTOFF * J0_CUTOFF);
    2.0 / (body + tail)
}

/// `N L_H = 2 exp(−∫ g ln g)`.
fn j0_entropic() -> f64 {
    let a = j0_tail_amplitude();
    let x = J0_CUTOFF;
    let body = 2.0
        * integrate_panels(0.0, x, PROFILE_PANEL, |t| {
            let g = j0_bessel_profile(t);
            if g > 0.0 {
                -g * g.ln()
            } else {
                0.0
            }
        });
    // averages ⟨sin²⟩ = 1/2 and ⟨sin² ln sin²⟩ = 1/2 − ln 2 over the oscillation
    let s = 2.0 / x.sqrt();
    let tail = -2.0 * a * ((0.5 * a.ln() + 0.5 - 2f64.ln()) * s - 0.75 * s * (x.ln() + 2.0));
    2.0 * (body + tail).exp()
}

/// `X` with `∫_0^X g = target`, by Newton iteration.
fn j0_confidence_root(target: f64) -> Result<f64> {
    newton_on_cumulative(j0_bessel_profile, 1.5, target, 0.05).ok_or_else(|| {
        Error::numeric(
            "asymptotics",
            "scaling_constants",
            "confidence root for j0 did not converge",
        )
    })
}

fn newton_on_cumulative(f: impl Fn(f64) -> f64 + Copy, start: f64, target: f64, width: f64) -> Option<f64> {
    let mut x = start;
    for _ in 0..50 {
        let residual = integrate_panels(0.0, x, width, f) - target;
        let step = residual / f(x);
        x -= step;
        if step.abs() < 1e-15 * x.abs() {
            return Some(x);
        }
    }
    None
}

fn optimal_sussman() -> f64 {
    1.0 / (2.0 * integrate_panels(0.0, OPTIMAL_CUTOFF, PROFILE_PANEL, |x| optimal_profile(x).powi(2)))
}

fn optimal_entropic() -> f64 {
    let entropy = 2.0
        * integrate_panels(0.0, OPTIMAL_CUTOFF, PROFILE_PANEL, |x| {
            let f = optimal_profile(x);
            if f > 0.0 {
                -f * f.ln()
            } else {
                0.0
            }
        });
    entropy.exp()
}

fn optimal_confidence_root(target: f64) -> f64 {
    newton_on_cumulative(optimal_profile, 3.0, target, PROFILE_PANEL).expect("monotone cumulative")
}

/// `(N L_F)^{−2} = 4 ∫ g'²` for the real amplitude `g`.
fn optimal_fisher() -> f64 {
    let x = OPTIMAL_CUTOFF;
    let body = 8.0
        * integrate_panels(0.0, x, PROFILE_PANEL, |t| {
            optimal_profile_amplitude_derivative(t).powi(2)
        });
    // g'² ≈ π sin²(x/2)/x⁴
    let tail = 8.0 * PI / (6.0 * x.powi(3));
    (body + tail).sqrt().recip()
}

/// `(N Δφ)² = ∫ x² f`, with the `4π/X` tail beyond the cut-off.
#[cfg(test)]
fn optimal_variance_integral() -> f64 {
    let x = OPTIMAL_CUTOFF;
    2.0 * integrate_panels(0.0, x, PROFILE_PANEL, |t| t * t * optimal_profile(t)) + 4.0 * PI / x
}
