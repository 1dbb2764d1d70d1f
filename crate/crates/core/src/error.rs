use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system label `{0}` (supported: A1..A8)")]
    UnsupportedLabel(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid simple-root subset: {0}")]
    InvalidSubset(String),

    #[error("element `{0}` does not belong to this algebra")]
    ForeignElement(String),

    #[error("order tag mismatch")]
    OrderTagMismatch,

    #[error("invalid module descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("`{0}` is not in the acting algebra of this module")]
    NotActing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
