//! Large-`N` approximations: special functions, asymptotic phase densities and
//! the scaling constants of each uncertainty measure.

pub mod constants;
pub mod profiles;
pub mod special;

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

pub use constants::{scaling_constants, ConstantRoute, ScalingConstant};
pub use profiles::{
    compare_approximations, envelope_maximum, j0_bessel_density, j0_bessel_profile, j0_intermediate_density,
    optimal_asymptotic_density, optimal_profile, optimal_profile_amplitude, ApproximationRow, AsymptoticProfile,
    ProfileKind,
};
pub use special::{bessel_j, bessel_j_quarter, bessel_j_scaled, gamma_fn, ln_gamma, BESSEL_CROSSOVER};

/// Composite 10-point Gauss–Legendre over `[a, b]` on panels no wider than `width`.
pub(crate) fn integrate_panels(a: f64, b: f64, width: f64, f: impl Fn(f64) -> f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let rule = GaussLegendre::new(NonZeroUsize::new(10).expect("nonzero"));
    let pairs = rule.as_node_weight_pairs();
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        let panel: f64 = pairs.iter().map(|&(x, w)| w * f(mid + 0.5 * h * x)).sum();
        total += panel;
    }
    0.5 * h * total
}
