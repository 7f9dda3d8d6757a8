use thiserror::Error;

/// Errors raised by the operators, solvers and experiment harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("fractional order must lie in the open interval (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time series too short: need {needed} samples, have {have}")]
    SeriesTooShort { needed: usize, have: usize },

    #[error("time points are not strictly increasing at index {0}")]
    NonMonotoneTimes(usize),

    #[error("energy weights violate c0 >= max(c1, -3 c1): c0 = {c0}, c1 = {c1}")]
    EnergyConstraint { c0: f64, c1: f64 },

    #[error("vector length mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("zero pivot in tridiagonal elimination at row {0}")]
    ZeroPivot(usize),

    #[error("problem data invalid: {0}")]
    InvalidProblem(String),

    #[error("compact scheme requires coefficients that depend on time only")]
    IncompatibleScheme,
}

pub type Result<T> = std::result::Result<T, Error>;
