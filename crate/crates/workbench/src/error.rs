use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WbError {
    #[error(transparent)]
    Core(#[from] beacon_iar::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl WbError {
    pub fn exit_code(&self) -> i32 {
        match self {
            WbError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, WbError>;
