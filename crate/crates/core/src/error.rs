use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A mathematical operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The root iteration hit its cap with residuals above rounding level.
    #[error("no convergence after {iterations} iterations (worst residual {worst_residual:e})")]
    Convergence { iterations: usize, worst_residual: f64 },
    /// A computed quantity failed an internal consistency check.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
