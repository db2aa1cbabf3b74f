use std::path::PathBuf;

use assocnet_core::ErrorKind;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] assocnet_core::Error),

    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: assocnet_core::Error,
    },

    #[error("{path}: invalid network JSON: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// 2 when a requested quantity is undefined for otherwise valid input,
    /// 1 for every other failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(e) | Error::Parse { source: e, .. } if e.kind() == ErrorKind::Undefined => {
                2
            }
            Error::Context { source, .. } => source.exit_code(),
            _ => 1,
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
