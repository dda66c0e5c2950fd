use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation produced a non-finite or otherwise unusable value.
    #[error("numeric failure in {module}::{operation}: {detail}")]
    Numeric {
        module: &'static str,
        operation: &'static str,
        detail: String,
    },

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature for {measure} did not converge: estimate {estimate:e}, error {error:e}")]
    Quadrature {
        measure: &'static str,
        estimate: f64,
        error: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(module: &'static str, operation: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric {
            module,
            operation,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
