//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive scheme exhausted its budget before meeting the tolerance.
    /// Carries the best estimate obtained so far and its error estimate.
    #[error("{context}: did not converge (best estimate {value:e}, error estimate {err_est:e})")]
    Convergence {
        context: String,
        value: f64,
        err_est: f64,
    },

    /// The Lebesgue exponent is outside the supported range (1, inf].
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),

    /// A stated precondition of an operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
