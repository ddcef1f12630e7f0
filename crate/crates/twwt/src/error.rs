use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unparseable or invalid input; exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// Enumeration budget exceeded; exit code 3.
    #[error("resource limit: {0}")]
    Budget(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<twwt_core::Error> for CliError {
    fn from(e: twwt_core::Error) -> Self {
        match e {
            twwt_core::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
