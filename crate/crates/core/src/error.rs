use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A structural hypothesis of a duality result is not met by a class.
    #[error("{result} requires {class} to be {flag}")]
    Hypothesis {
        result: String,
        class: String,
        flag: String,
    },

    #[error("non-finite objective value: {0}")]
    NonFinite(String),

    #[error("functional is not linear: {0}")]
    Nonlinear(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
