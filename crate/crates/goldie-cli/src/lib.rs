//! Library surface of the command line: instance file IO, report
//! schemas and their renderings, and the error-to-exit-code mapping.

use std::fmt;

use goldie_core::Error as CoreError;

pub mod instance;
pub mod report;

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Validation(String),
}

impl CliError {
    pub fn validation(msg: String) -> Self {
        CliError::Validation(msg)
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::AssumptionViolated { .. }) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Validation(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}
