use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Sim(#[from] irs_noma::Error),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 success, 1 config/validation, 2 I/O, 3 numeric domain.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Csv(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Sim(e) if e.is_validation() => 1,
            CliError::Sim(_) => 3,
        }
    }
}
