use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands do not fit together (length mismatch, element of another group).
    #[error("structural error: {0}")]
    Structural(String),

    /// A parameter lies outside the range an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested work exceeds a configured limit.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("unknown fixture `{0}` (expected one of chi26, chi36a, chi36b, chi46, chi46c)")]
    UnknownFixture(String),

    /// A coloring spec or checkpoint file parsed as JSON but is semantically invalid.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
