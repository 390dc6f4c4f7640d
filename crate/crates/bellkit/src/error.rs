use std::fmt;
use std::io;

/// Failures reported by the command-line front end.
#[derive(Debug)]
pub enum CliError {
    Core(bellkit_core::Error),
    Parse { what: &'static str, input: String },
    Input { line: usize, message: String },
    Invalid(String),
    Io(io::Error),
}

impl CliError {
    /// Stable identifier used in the machine-readable error record.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "validation",
            CliError::Parse { .. } => "parse",
            CliError::Input { .. } => "input",
            CliError::Invalid(_) => "invalid-arguments",
            CliError::Io(_) => "io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Parse { what, input } => write!(f, "cannot parse {what} from {input:?}"),
            CliError::Input { line, message } => write!(f, "input line {line}: {message}"),
            CliError::Invalid(message) => f.write_str(message),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Core(e) => Some(e),
            CliError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<bellkit_core::Error> for CliError {
    fn from(e: bellkit_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
