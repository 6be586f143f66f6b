use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The API was used out of order (missing history, gaps in cached tables).
    #[error("usage error: {0}")]
    Usage(String),

    /// The symmetric tridiagonal eigensolver behind a Gauss rule failed.
    #[error("eigensolver failed to converge while building a {nodes}-node rule")]
    EigenSolver { nodes: usize },

    /// The fixed-point iteration for the step coefficients did not converge.
    #[error(
        "fixed-point iteration failed at step {step} after {iterations} iterations \
         (last increment {last_increment:.3e})"
    )]
    FixedPoint {
        step: usize,
        iterations: usize,
        last_increment: f64,
    },

    /// The argument is valid mathematically but not supported by this implementation.
    #[error("unsupported argument: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain_err {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain_err;
