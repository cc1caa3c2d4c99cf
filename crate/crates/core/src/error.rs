use thiserror::Error;

use crate::fuzzy::Condition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Envelope data violates one of the representation conditions.
    #[error("invalid fuzzy number shape ({condition}): {detail}")]
    InvalidShape { condition: Condition, detail: String },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} is below the start index {start}")]
    Index { index: usize, start: usize },

    /// A weight evaluated to zero or a non-finite value, so the scheme leaves the set U.
    #[error("weight {which}_{index} = {value} is not admissible (weights must be finite and nonzero)")]
    Weight {
        which: &'static str,
        index: usize,
        value: f64,
    },

    #[error("table has no entry for index {index} (covers {first}..{end})")]
    TableExhausted { index: usize, first: usize, end: usize },

    #[error("configuration error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// CLI exit status: 3 for I/O failures, 2 for everything else (bad input).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::Csv(e) if e.is_io_error() => 3,
            Error::Json(e) if e.is_io() => 3,
            _ => 2,
        }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
