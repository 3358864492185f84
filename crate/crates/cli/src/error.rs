use nfc_core::NfcError;
use thiserror::Error;

use crate::input::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("input error: {0}")]
    Input(String),
    #[error("{context}: {source}")]
    Engine {
        context: String,
        #[source]
        source: NfcError,
    },
    #[error("report error: {0}")]
    Report(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn engine(context: impl Into<String>, source: NfcError) -> Self {
        CliError::Engine { context: context.into(), source }
    }

    /// 1 for input errors, 2 for a vanished pivot, 3 for failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine { source: NfcError::PivotVanished { .. }, .. } => 2,
            CliError::Verify(_) => 3,
            _ => 1,
        }
    }
}
