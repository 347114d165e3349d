//! Error types shared across the toolkit.

use std::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors emitted by tensor, store, optimizer, and file-format code.
#[derive(Debug)]
pub enum Error {
    /// Two values that must agree structurally (names, shapes, layouts) do not.
    Structure { context: &'static str, detail: String },
    /// An argument violates a documented precondition.
    Usage { context: &'static str, detail: String },
    /// A computation produced or received a non-finite value.
    Numeric { context: &'static str, detail: String },
    /// Coverage is undefined because every sensitivity score is zero.
    UndefinedCoverage,
    /// A replayed random stream did not land on the expected counter.
    StreamIntegrity { expected: u64, actual: u64 },
    /// A file did not parse as the expected format.
    Format { context: &'static str, detail: String },
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl Error {
    pub fn structure(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Structure { context, detail: detail.into() }
    }

    pub fn usage(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Usage { context, detail: detail.into() }
    }

    pub fn numeric(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Numeric { context, detail: detail.into() }
    }

    pub fn format(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Format { context, detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structure { context, detail } => {
                write!(f, "structure mismatch in {context}: {detail}")
            }
            Error::Usage { context, detail } => write!(f, "invalid argument to {context}: {detail}"),
            Error::Numeric { context, detail } => write!(f, "numeric failure in {context}: {detail}"),
            Error::UndefinedCoverage => {
                write!(f, "coverage is undefined: all sensitivity scores are zero")
            }
            Error::StreamIntegrity { expected, actual } => write!(
                f,
                "stream replay mismatch: expected counter {expected}, found {actual}"
            ),
            Error::Format { context, detail } => write!(f, "malformed {context}: {detail}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
