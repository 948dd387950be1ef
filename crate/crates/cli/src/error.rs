use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI command. Each variant maps to one process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON or a value of the wrong type.
    #[error("{source_name}: {message}")]
    Parse { source_name: String, message: String },

    /// Well-formed JSON that violates the schema (shapes, ranges, unknown kinds).
    #[error("{source_name}: {field}: {message}")]
    Schema {
        source_name: String,
        field: String,
        message: String,
    },

    #[error("basis is not orthonormal (max Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{source_name}: matrix side {side} is not a perfect square")]
    NonSquareSide { source_name: String, side: usize },

    #[error("{0}")]
    DimensionMismatch(String),

    #[error("invalid arguments: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Schema { .. } | CliError::Usage(_) => 2,
            CliError::NotOrthonormal(_) => 3,
            CliError::Io { .. } => 4,
            CliError::NonSquareSide { .. } => 5,
            CliError::DimensionMismatch(_) => 6,
        }
    }

    pub(crate) fn schema(source_name: &str, field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Schema {
            source_name: source_name.to_owned(),
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn parse(source_name: &str, err: serde_json::Error) -> Self {
        CliError::Parse {
            source_name: source_name.to_owned(),
            message: err.to_string(),
        }
    }
}

/// Exit codes, in one place.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const NOT_ORTHONORMAL: i32 = 3;
    pub const IO: i32 = 4;
    pub const NON_SQUARE_SIDE: i32 = 5;
    pub const DIMENSION: i32 = 6;
}
