use std::fmt;

use crate::parser::ParseError;

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    /// A well-formed expression that cannot be evaluated in its context.
    Resolve(String),
    Core(galilei_core::Error),
    Load(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn resolve(msg: impl Into<String>) -> Self {
        CliError::Resolve(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Resolve(s) => write!(f, "cannot evaluate: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Load(s) => write!(f, "cannot load: {s}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Parse(e) => Some(e),
            CliError::Core(e) => Some(e),
            CliError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<galilei_core::Error> for CliError {
    fn from(e: galilei_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
