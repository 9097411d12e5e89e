use thiserror::Error;

/// Errors raised by the geometric and analytic routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimError { expected: usize, got: usize },
    #[error("argument out of range: {0}")]
    RangeError(String),
    #[error("slice frame error: {0}")]
    FrameError(String),
    #[error("evaluation point {t} is within {step} of the support boundary")]
    BoundaryError { t: f64, step: f64 },
    #[error("body is not smooth enough: {0}")]
    SmoothnessError(String),
    #[error("quadrature resolution too low: {0}")]
    ResolutionError(String),
    #[error("fractional order {0} is an integer (pole of the Gamma function)")]
    PoleError(f64),
    #[error("precondition failed: {0}")]
    PreconditionError(String),
    #[error("exponent fit is degenerate: {0}")]
    FitError(String),
    #[error("body file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
