use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: malformed matrix file: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Matrix {
        path: PathBuf,
        source: opineq::Error,
    },

    #[error(transparent)]
    Core(#[from] opineq::Error),
}

impl CliError {
    /// Process exit status for this error: usage and configuration problems
    /// map to 2, everything else to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Json { .. } | CliError::Matrix { .. } => 2,
            CliError::Io { .. } | CliError::Core(_) => 1,
        }
    }
}
