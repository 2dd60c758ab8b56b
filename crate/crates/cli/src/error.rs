use thiserror::Error;

/// Exit code 2: the input was invalid. Exit code 1: something internal broke.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<skipseq_core::CoreError> for CliError {
    fn from(e: skipseq_core::CoreError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<skipseq_ingest::IngestError> for CliError {
    fn from(e: skipseq_ingest::IngestError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<skipseq_sim::SimError> for CliError {
    fn from(e: skipseq_sim::SimError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("serialization failed: {e}"))
    }
}
