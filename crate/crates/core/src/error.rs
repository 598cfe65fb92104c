use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An internal invariant did not hold. Seeing this is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("corrupt checkpoint: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
