use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("reading {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("writing {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),
    #[error("{0} of {1} suites failed")]
    SelftestFailed(usize, usize),
    #[error(transparent)]
    Domain(#[from] ellinv_core::Error),
}

impl CliError {
    /// 2 for geometric/domain failures, 1 for malformed input and
    /// everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(ellinv_core::Error::Parse(_)) | CliError::Domain(ellinv_core::Error::InvalidValue(_)) => 1,
            CliError::Domain(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
