use knc_core::KncError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] KncError),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// 2 for bad input, 1 for a computation that ran and did not verify.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                KncError::Parse(_)
                | KncError::InvalidConfig(_)
                | KncError::PointIndex { .. }
                | KncError::WeightMismatch(_)
                | KncError::PoleOffMarkedSet(_)
                | KncError::KindMismatch(_)
                | KncError::WindowTooSmall { .. }
                | KncError::Invalid(_) => 2,
                _ => 1,
            },
        }
    }
}
