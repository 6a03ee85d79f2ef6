//! Text and JSON formats for `core-fibres`, and the commands behind the
//! `core-fibres` binary.

pub mod commands;
pub mod format;

use core_fibres::Error;

/// A failed command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or input values; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computational guard tripped, such as a cap; exit code 3.
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPartition(_)
            | Error::PadTooShort { .. }
            | Error::ZeroModulus
            | Error::NotADivisor(..)
            | Error::UnbalancedMargins { .. }
            | Error::NotACore(_)
            | Error::Dimension(_)
            | Error::NegativeEntry => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}
