//! Canonical phase distributions of fixed-photon-number interferometric input
//! states, and the phase-uncertainty measures built on them.
//!
//! The state, distribution and measure code is generic over [`Real`] (`f32` or
//! `f64`); the special functions and asymptotic constants are `f64` only.
//!
//! ```
//! use canonphase::{distribution, holevo_variance, make_state, Basis, StateKind};
//!
//! let state = make_state::<f64>(4, StateKind::Optimal, Basis::Y).unwrap();
//! let v = holevo_variance(&distribution(&state).unwrap()).unwrap().value();
//! assert!((v - 1.0 / 3.0).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose so NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
mod fourier;
pub mod measures;
pub mod phase_dist;
mod quadrature;
pub mod scalar;
pub mod spin;
pub mod states;
pub mod su2;

pub use error::{Error, Result};
pub use measures::{
    confidence_interval, entropic_length, fisher_length, fisher_length_closed_j0, fisher_length_quadrature,
    reciprocal_peak, report, report_distribution, sin_squared_expectation, standard_variance, sussman_length,
    MeasureReport,
};
pub use phase_dist::{
    circular_moment, distribution, holevo_variance, holevo_variance_mod_pi, optimal_density_closed, sample, Period,
    PhaseDistribution, Spread,
};
pub use quadrature::QUADRATURE_TOLERANCE;
pub use scalar::Real;
pub use spin::SpinIndex;
pub use states::{
    make_state, min_eigenstates, to_basis, truncate_optimal, truncation_window, AngularState, Basis, StateKind,
};
pub use su2::{basis_overlap, wigner_column, wigner_element, WignerColumn};

/// Double-precision state.
pub type State = AngularState<f64>;
/// Double-precision phase distribution.
pub type Distribution = PhaseDistribution<f64>;
/// Double-precision Wigner column.
pub type Column = WignerColumn<f64>;
/// Double-precision measure report.
pub type Report = MeasureReport<f64>;
/// Single-precision state.
pub type StateF32 = AngularState<f32>;
/// Single-precision phase distribution.
pub type DistributionF32 = PhaseDistribution<f32>;
/// Single-precision Wigner column.
pub type ColumnF32 = WignerColumn<f32>;
/// Single-precision measure report.
pub type ReportF32 = MeasureReport<f32>;
