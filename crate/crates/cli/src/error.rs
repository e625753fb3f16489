use std::fmt;
use std::path::PathBuf;

use genlstar::Error;

/// Exit codes: 1 other failures, 2 unreadable or ill-typed input, 3 budget
/// exhausted, 4 algebra extraction failed.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(..) => 1,
            CliError::Core(e) => match e {
                Error::Parse(_)
                | Error::UnknownLetter(_)
                | Error::LetterOutOfRange { .. }
                | Error::AlphabetMismatch(_)
                | Error::SortMismatch(_)
                | Error::InvalidMachine(_)
                | Error::InvalidTarget(_)
                | Error::Json(_) => 2,
                Error::BudgetExceeded(_) => 3,
                Error::Extraction(_) => 4,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
