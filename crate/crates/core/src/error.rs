use thiserror::Error;

#[derive(Debug, Error)]
pub enum QloqError {
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, QloqError>;
