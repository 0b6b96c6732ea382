use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("revoked")]
    Revoked,
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("state corruption: {0}")]
    StateCorruption(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Scheme(#[from] ribe::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Revoked => 3,
            CliError::Integrity(_) => 4,
            CliError::StateCorruption(_) => 5,
            CliError::Io { .. } | CliError::Scheme(_) | CliError::Other(_) => 1,
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;
