use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {value} is out of range (must be below {limit})")]
    OutOfRange { value: u64, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("row {row} incomplete: column scan reached the cap of {cap} columns")]
    RowIncomplete { row: usize, cap: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
