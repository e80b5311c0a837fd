use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] penney::Error),
    #[error("{0}")]
    Spec(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Stable machine-readable code printed alongside the message.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Spec(_) => "invalid_argument",
            CliError::SelfCheck(_) => "self_check_failed",
            CliError::Io(_) => "io_error",
            CliError::Json(_) | CliError::Csv(_) => "encoding_error",
        }
    }
}
