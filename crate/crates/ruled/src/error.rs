use std::path::PathBuf;

use ruled_core::{Error, ParseError};
use thiserror::Error as ThisError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Not similar, or a verification check failed.
    pub const NEGATIVE: i32 = 1;
    /// Usage, IO or file-format problem.
    pub const INPUT: i32 = 2;
    /// A geometric precondition does not hold.
    pub const GEOMETRY: i32 = 3;
    pub const KIND_MISMATCH: i32 = 4;
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Format { path: PathBuf, line: usize, message: String },
    /// An expression value failed to parse. `column` is 1-based within the line.
    #[error("{}:{line}:{column}: in `{key}`: {source}", path.display())]
    Expr {
        path: PathBuf,
        line: usize,
        column: usize,
        key: String,
        #[source]
        source: ParseError,
    },
    #[error("{}: {}", .0.name(), .0)]
    Geometry(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } | CliError::Expr { .. } => exit::INPUT,
            CliError::Geometry(Error::KindMismatch(_)) => exit::KIND_MISMATCH,
            CliError::Geometry(Error::InvalidInput(_) | Error::Parse(_)) => exit::INPUT,
            CliError::Geometry(_) => exit::GEOMETRY,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Geometry(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
