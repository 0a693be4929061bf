use std::path::PathBuf;

use crate::qasm::QasmError;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ampm_core::Error),
    #[error(transparent)]
    Qasm(#[from] QasmError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Process exit status: 2 for rejected input, 3 when a size or synthesis
    /// bound is hit, 1 for I/O failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::Qasm(QasmError::Core(e)) if e.is_capability_bound() => 3,
            CliError::Qasm(QasmError::Unsupported(_)) => 3,
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}
