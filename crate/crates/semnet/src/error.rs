use std::path::Path;

/// Errors produced while ingesting dumps, computing the closure, or running
/// the analyses.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A line could not be parsed into the expected row shape.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    /// A line had the wrong number of fields for its table.
    #[error("{path}:{line}: {table} rows have {expected} fields, found {found}")]
    Schema {
        path: String,
        line: u64,
        table: &'static str,
        expected: usize,
        found: usize,
    },

    /// Cross-table references or table contents violate an invariant.
    #[error("integrity: {0}")]
    Integrity(String),

    /// A caller-supplied parameter is out of range or inconsistent.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The requested quantity is undefined for this input (e.g. an average
    /// over an empty set).
    #[error("undefined: {0}")]
    Undefined(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: &Path, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.display().to_string(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
