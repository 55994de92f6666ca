use hitchin_core::CoreError;
use hitchin_exact::ExactError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Domain,
    Parse,
    Internal,
}

impl CliError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            CliError::Domain(_) => ErrorKind::Domain,
            CliError::Parse(_) => ErrorKind::Parse,
            CliError::Internal(_) => ErrorKind::Internal,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Internal(_) => CliError::Internal(e.to_string()),
            CoreError::Exact(ExactError::Parse(_)) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CoreError::from(e).into()
    }
}
