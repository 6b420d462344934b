use std::fmt;

use hyperline_core::Error;

/// Failures of a command, each with one name and one exit status.
#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Io(std::io::Error),
    Usage(String),
    LawFailure { failed: usize, laws: usize },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.name(),
            CliError::Io(_) => "IoError",
            CliError::Usage(_) => "UsageError",
            CliError::LawFailure { .. } => "LawFailure",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(Error::SyntaxError { .. }) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "IoError: {e}"),
            CliError::Usage(msg) => write!(f, "UsageError: {msg}"),
            CliError::LawFailure { failed, laws } => {
                write!(f, "LawFailure: {failed} of {laws} laws failed")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
