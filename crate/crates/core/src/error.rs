use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("value {value} at block ({row}, {col}) is outside [0, 1]")]
    ValueOutOfRange { row: usize, col: usize, value: f64 },

    #[error("non-finite value at block ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live on different partitions; refine them first")]
    PartitionMismatch,

    #[error("level {0} is outside [0, 1]")]
    LevelOutOfRange(f64),

    #[error("not symmetric: block ({row}, {col}) holds {upper} but ({col}, {row}) holds {lower}")]
    Asymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid pattern `{spec}`: {reason}")]
    InvalidPattern { spec: String, reason: String },

    #[error("{what}: {size} exceeds the budget of {limit}; {advice}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
        advice: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
