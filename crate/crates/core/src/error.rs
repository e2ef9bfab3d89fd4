use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("algebra dimension {0} outside supported range 1..=8")]
    DimensionRange(usize),
    #[error("singular element: {0}")]
    Singular(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("repeated interpolation node at index {0}")]
    RepeatedNode(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation tail {tail:.3e} exceeds tolerance {tol:.3e}")]
    Truncation { tail: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
