//! CLI error type with the exit-code contract:
//! 1 invalid input or usage, 2 infeasible capacity, 3 numerical failure.

use std::path::PathBuf;

use lancut_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn invalid(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        CliError::Invalid { path: path.into(), msg: msg.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::InfeasibleCapacity { .. }) => 2,
            CliError::Core(CoreError::NoConvergence { .. }) => 3,
            _ => 1,
        }
    }
}
