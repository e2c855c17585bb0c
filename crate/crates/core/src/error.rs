use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size n = {0}: at least 4 nodes are required")]
    InvalidSize(usize),

    #[error("node {index} out of range for n = {n}")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("positions ({i}, {j}) do not form a valid 2-OPT move for n = {n}")]
    InvalidMove { i: usize, j: usize, n: usize },

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl Error {
    /// Short stable identifier, used for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSize(_) => "invalid_size",
            Error::NodeOutOfRange { .. } => "node_out_of_range",
            Error::InvalidMove { .. } => "invalid_move",
            Error::InvalidTour(_) => "invalid_tour",
            Error::Parse { .. } => "parse",
            Error::OutOfRange { .. } => "out_of_range",
            Error::Usage(_) => "usage",
            Error::Io { .. } => "io",
            Error::Csv { .. } => "csv",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}
