//! Crate-wide error type.
//!
//! Every fallible operation in the toolkit returns [`Result`]. The variants
//! separate input problems (I/O, parse, validation) from numeric failures so
//! callers can map them to different exit codes.

use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Reading or writing a file failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        /// File the operation touched.
        path: PathBuf,
        /// Underlying OS error.
        source: std::io::Error,
    },

    /// A line of an input file could not be parsed at all.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// 1-based line number within the offending file.
        line: usize,
        /// What went wrong.
        message: String,
    },

    /// Structurally parseable input that violates a documented contract
    /// (missing field, out-of-range score, duplicate key, shape mismatch).
    #[error("validation error: {0}")]
    Validation(String),

    /// A text exceeds the encoder's sub-word unit budget.
    #[error("input of {length} sub-word units exceeds the budget of {max_units}")]
    Budget {
        /// Length of the offending input in sub-word units.
        length: usize,
        /// Configured maximum.
        max_units: usize,
    },

    /// A numeric computation produced a non-finite value or an otherwise
    /// unusable result (e.g. NaN training loss, zero-norm embedding).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    /// Wraps an I/O error with the path it occurred on.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Builds a parse error for a 1-based line number.
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Builds a validation error from anything displayable.
    pub fn validation(message: impl Into<String>) -> Self {
        Error::Validation(message.into())
    }

    /// Builds a numeric-failure error.
    pub fn numeric(message: impl Into<String>) -> Self {
        Error::Numeric(message.into())
    }
}
