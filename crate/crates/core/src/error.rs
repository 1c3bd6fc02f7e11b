//! Error types shared across the solver modules.

use thiserror::Error;

/// Errors produced by domain construction and the numerical solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Dimension outside the supported range (N >= 1).
    #[error("invalid dimension N = {0}, expected N >= 1")]
    InvalidDimension(i64),

    /// Ill-formed domain or profile parameters.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A profile whose supremum vanishes (or exceeds 1) where positivity is required.
    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    /// The operation requires a different profile kind.
    #[error("wrong profile kind: expected {expected}, got {got}")]
    WrongProfile { expected: &'static str, got: String },

    /// A membrane state reached or crossed the ground plate (u >= 1).
    #[error("singular state: max deflection {max_u} reached the contact value 1")]
    SingularState { max_u: f64 },

    /// An iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A numerical routine failed outside plain iteration exhaustion.
    #[error("numeric failure in {what}: residual {residual:.3e}")]
    NumericFailure { what: &'static str, residual: f64 },

    /// The analytic bracket for the pull-in voltage was contradicted numerically.
    #[error("bound violation: {0}")]
    BoundViolation(String),

    /// A branch was not traced far enough to answer the query.
    #[error("insufficient trace: {0}")]
    InsufficientTrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
