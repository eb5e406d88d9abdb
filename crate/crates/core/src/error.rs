use thiserror::Error;

/// Errors raised by the kernels, embeddings, solvers and problem builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular: zero pivot at index {index}")]
    Singular { index: usize },
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("basis is not orthonormal: ||Q^T Q - I||_F = {deviation:e}")]
    NotOrthonormal { deviation: f64 },
    #[error("theorem hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("reference quantity is zero: {0}")]
    ZeroReference(&'static str),
    #[error("problem too large for {what}: {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}
