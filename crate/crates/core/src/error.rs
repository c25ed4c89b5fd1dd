use std::path::PathBuf;

use crate::geometry::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },

    #[error("unsupported format version {found} (expected {expected})")]
    Version { found: u64, expected: u64 },

    #[error("invalid geometry:\n{0}")]
    Invalid(ValidationReport),

    #[error("code distance must be at least 3, got {0}")]
    InvalidDistance(u32),

    #[error("complex would need {needed} cells, cap is {cap}")]
    ResourceCap { needed: usize, cap: usize },

    #[error("no correlation surface realizes input generator {generator}")]
    UnderdeterminedStructure { generator: String },

    #[error("bridge precondition violated: {0}")]
    TheoremPrecondition(String),

    #[error("move precondition violated: {0}")]
    Precondition(String),

    #[error("move rejected, logical map changed:\n{diff}")]
    MoveRejected { diff: String },

    #[error("move {index} failed: {source}")]
    Replay {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("port signatures differ: {0}")]
    SignatureMismatch(String),

    #[error("circuit error: {0}")]
    Circuit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn from_json(err: serde_path_to_error::Error<serde_json::Error>) -> Self {
        let field = err.path().to_string();
        let inner = err.into_inner();
        Error::Parse {
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    }
}
