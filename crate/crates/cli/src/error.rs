use thiserror::Error;

use hazard_core::Error as CoreError;

/// CLI failure, one variant per exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub(crate) fn io(context: impl std::fmt::Display, err: std::io::Error) -> Self {
        CliError::Data(format!("{context}: {err}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain(_) => CliError::Usage(e.to_string()),
            CoreError::InvalidData(_) => CliError::Data(e.to_string()),
            CoreError::QuadratureNonConvergence { .. } | CoreError::Numeric(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
