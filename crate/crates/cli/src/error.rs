use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, field {field}: {message}")]
    Parse { line: usize, field: usize, message: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qzero_core::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(qzero_core::Error::Argument(_) | qzero_core::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}
