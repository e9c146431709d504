use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid config: {path}: {reason}")]
    Validation { path: String, reason: String },
    #[error("{context}: {source}")]
    Numerical {
        context: &'static str,
        #[source]
        source: binormix::Error,
    },
    #[error("bound violated: {0}")]
    Bound(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn validation(path: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation {
            path: path.into(),
            reason: reason.into(),
        }
    }

    pub fn numerical(context: &'static str) -> impl FnOnce(binormix::Error) -> CliError {
        move |source| CliError::Numerical { context, source }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    /// 2 for bad input, 3 for numerical failures, 4 for bound violations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Validation { .. } => 2,
            CliError::Bound(_) => 4,
            CliError::Io { .. } => 2,
            CliError::Numerical { .. } | CliError::Csv(_) | CliError::Json(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
