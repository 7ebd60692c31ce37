use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Everything a subcommand can fail with, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// A computed result contradicts a proven statement.
    #[error("finding: {0}")]
    Finding(String),
    #[error("refused: {0}")]
    Refusal(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Core(fibwork_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Finding(_) => 1,
            CliError::Refusal(_) | CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Core(fibwork_core::Error::CapExceeded { .. }) => 2,
            CliError::Core(fibwork_core::Error::Domain(_)) => 2,
            CliError::Core(fibwork_core::Error::NotDivisible { .. }) => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<fibwork_core::Error> for CliError {
    fn from(e: fibwork_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
