//! Composite Gauss–Legendre quadrature over the principal interval of a phase density.
//!
//! Panels have width at most `π/(4(N+2))`. The `q`-th node of every panel lies on a
//! uniform grid, so the density at all nodes comes from one FFT synthesis per node index.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::error::{Error, Result};
use crate::phase_dist::PhaseDistribution;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Gauss–Legendre nodes per panel.
const NODES_PER_PANEL: usize = 10;

/// Relative disagreement between the `M`- and `2M`-panel results that is accepted.
pub const QUADRATURE_TOLERANCE: f64 = 1e-6;

/// Nodes and weights mapped to `[0, 1]`, weights summing to 1.
fn unit_rule<T: Real>() -> Vec<(T, T)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(NODES_PER_PANEL).expect("nonzero"));
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (lit((x + 1.0) / 2.0), lit(w / 2.0)))
        .collect()
}

/// Number of panels covering the principal interval at the default resolution.
pub(crate) fn panel_count<T: Real>(dist: &PhaseDistribution<T>) -> usize {
    let width = std::f64::consts::PI / (4.0 * (dist.photons() as f64 + 2.0));
    let len = to_f64(dist.period().length::<T>());
    (len / width).ceil() as usize
}

/// `∫ f(φ, P(φ), P'(φ)) dφ` over the principal interval with `panels` panels.
///
/// The derivative passed to `f` is zero unless `with_derivative` is set.
pub(crate) fn integrate<T, F>(dist: &PhaseDistribution<T>, panels: usize, with_derivative: bool, f: F) -> T
where
    T: Real,
    F: Fn(T, T, T) -> T,
{
    let h = dist.period().length::<T>() / from_usize::<T>(panels);
    let lo = dist.lower_edge();
    let mut total = T::zero();
    for (x, w) in unit_rule::<T>() {
        let offset = h * x;
        let values = dist.density_grid(offset, panels);
        let derivatives = if with_derivative {
            dist.derivative_grid(offset, panels)
        } else {
            vec![T::zero(); panels]
        };
        let mut column = T::zero();
        for (p, (&v, &d)) in values.iter().zip(&derivatives).enumerate() {
            let phi = lo + offset + h * from_usize::<T>(p);
            column = column + f(phi, v, d);
        }
        total = total + w * column;
    }
    total * h
}

/// [`integrate`] at the default and doubled resolution; fails when they disagree.
pub(crate) fn integrate_checked<T, F>(
    dist: &PhaseDistribution<T>,
    measure: &'static str,
    with_derivative: bool,
    f: F,
) -> Result<T>
where
    T: Real,
    F: Fn(T, T, T) -> T,
{
    let panels = panel_count(dist);
    let coarse = integrate(dist, panels, with_derivative, &f);
    let fine = integrate(dist, 2 * panels, with_derivative, &f);
    let error = to_f64((fine - coarse).abs());
    let estimate = to_f64(fine);
    if !estimate.is_finite() || error > QUADRATURE_TOLERANCE * estimate.abs().max(1.0) {
        return Err(Error::Quadrature {
            measure,
            estimate,
            error,
        });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_dist::{distribution, Period};
    use crate::states::{make_state, Basis, StateKind};
    use std::f64::consts::PI;

    #[test]
    fn integrates_density_to_one() {
        for kind in StateKind::ALL {
            for n in [2u32, 10, 64] {
                let dist = distribution(&make_state::<f64>(n, kind, Basis::Y).unwrap()).unwrap();
                let total = integrate_checked(&dist, "norm", false, |_, p, _| p).unwrap();
                assert!((total - 1.0).abs() < 1e-13, "{kind} {n}: {total}");
            }
        }
    }

    #[test]
    fn polynomial_moment_of_uniform_density() {
        let dist = PhaseDistribution::<f64>::uniform(3, Period::TwoPi);
        let m2 = integrate(&dist, 7, false, |phi, p, _| phi * phi * p);
        assert!((m2 - PI * PI / 3.0).abs() < 1e-13);
    }
}
