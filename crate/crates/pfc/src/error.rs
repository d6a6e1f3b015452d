use pfc_core::Error as CoreError;

/// Failures surfaced to the shell, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Bounds(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0} check(s) failed")]
    Violation(usize),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) | CliError::Bounds(_) | CliError::Io(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::KMismatch { .. } | CoreError::GroundMismatch { .. } | CoreError::OrderMismatch { .. } => {
                CliError::Mismatch(e.to_string())
            }
            CoreError::SizeLimit { .. } => CliError::Bounds(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
