use thiserror::Error;

pub type Result<T> = std::result::Result<T, ZicError>;

#[derive(Debug, Error)]
pub enum ZicError {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("interference ratio n/m is undefined when m = 0")]
    UndefinedAlpha,

    #[error("corner {corner} is not valid in the {regime} regime")]
    InvalidCorner { corner: String, regime: String },

    #[error("exhaustive enumeration needs {bits} input bits, cap is {cap}")]
    EnumerationCap { bits: u32, cap: u32 },

    #[error("region is unbounded")]
    Unbounded,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("count {0} is not a power of two; entropy is not dyadic")]
    NonDyadic(u64),

    #[error("verification oracles disagree: {0}")]
    OracleMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> ZicError {
    ZicError::Validation(msg.into())
}
