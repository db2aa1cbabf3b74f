use alloc::string::String;
use core::fmt;

/// Broad failure classes. The CLI maps them onto distinct exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed, out-of-range or otherwise unusable input.
    Input,
    /// The input is well formed but the requested quantity is not defined
    /// for it (no reachable pair, zero total weight, zero variance...).
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Generic input error.
    Input(String),
    /// A row of a text file could not be parsed.
    Parse {
        line: usize,
        message: String,
    },
    /// A node id outside `0..n`.
    NodeOutOfRange {
        id: usize,
        n: usize,
    },
    Undefined(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::NodeOutOfRange { .. } => {
                ErrorKind::Input
            }
            Error::Undefined(_) => ErrorKind::Undefined,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn undefined(msg: impl Into<String>) -> Self {
        Error::Undefined(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::NodeOutOfRange { id, n } => {
                write!(f, "node id {id} out of range for a network of {n} nodes")
            }
            Error::Undefined(msg) => write!(f, "undefined result: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
