use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A family produced a non-positive or non-finite value, or its parameters are malformed.
    #[error("invalid sequence family: {0}")]
    InvalidFamily(String),

    #[error("index {index} is beyond the explicit list of length {len}")]
    IndexBeyondList { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Gamma-function or exponentiation overflow.
    #[error("range error: {0}")]
    Range(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("sequences are not regulated: {0}")]
    NotRegulated(String),

    #[error("exact arithmetic unavailable: {0}")]
    ExactUnavailable(String),
}
