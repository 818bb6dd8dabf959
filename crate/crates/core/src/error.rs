use std::path::PathBuf;

use thiserror::Error;

use crate::encoding::Attribute;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: missing column `{column}`", path.display())]
    MissingColumn { path: PathBuf, column: String },

    #[error("{}: row {row}: {message}", path.display())]
    InvalidRow {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("coordinate out of range: latitude {latitude}, longitude {longitude}")]
    CoordinateOutOfRange { latitude: f64, longitude: f64 },

    #[error("{attribute}: {count} categories exceed the ceiling of {ceiling}")]
    CeilingExceeded {
        attribute: Attribute,
        count: usize,
        ceiling: usize,
    },

    #[error("invalid century {0}: centuries start at 1")]
    InvalidCentury(u32),

    #[error("invalid year {0}: there is no year zero")]
    InvalidYear(u32),

    #[error("modifier `{keyword}`: {message}")]
    InvalidModifier { keyword: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
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

    pub(crate) fn row(path: impl Into<PathBuf>, row: usize, message: impl Into<String>) -> Self {
        Error::InvalidRow {
            path: path.into(),
            row,
            message: message.into(),
        }
    }
}
