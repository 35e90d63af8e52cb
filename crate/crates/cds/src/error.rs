use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::format::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Core(#[from] cds_core::Error),
    #[error("verification failed:\n{}", .0.join("\n"))]
    Verification(Vec<String>),
    #[error("{0}")]
    Failed(String),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 0 ok, 1 other, 2 usage, 3 infeasible, 4 verification, 5 size cap.
    pub fn exit_code(&self) -> i32 {
        use cds_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Infeasible { .. } | E::InfeasibleQuota { .. }) => 3,
            CliError::Core(E::BudgetTooSmall { .. } | E::LengthMismatch { .. }) => 2,
            CliError::Core(E::TooLarge { .. }) => 5,
            CliError::Verification(_) => 4,
            _ => 1,
        }
    }
}
