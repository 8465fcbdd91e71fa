//! Library error type.

/// Errors produced by the solver library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration (root find, eigen solve) failed to reach its tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),

    /// A computed quantity left the representable floating range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The linear system is singular (or numerically indistinguishable from it).
    #[error("singular system: {0}")]
    Singular(String),

    /// Two solutions/reports were combined with incompatible parameters.
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    /// A quadrature weight exponent fell to -1 or below.
    #[error("exponent out of range: {0}")]
    ExponentOutOfRange(String),

    /// Malformed configuration or identifier.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
