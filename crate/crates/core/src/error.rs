use thiserror::Error;

/// Errors produced while loading, validating or querying hypergraphs and
/// coreness indexes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("invalid generator config: {0}")]
    Config(String),

    #[error("unsupported index version {found} (expected {expected})")]
    Version { found: u64, expected: u64 },

    #[error("invalid index: {0}")]
    Validation(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
