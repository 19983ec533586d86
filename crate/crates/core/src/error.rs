// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,

    #[error("invalid citation count {0}: citations must be non-negative integers")]
    InvalidCitationCount(i64),

    #[error("invalid paper count {count} for {citations} citations: counts must be positive")]
    InvalidPaperCount { citations: u64, count: u64 },

    #[error("scale factor must be a positive integer")]
    InvalidScale,

    #[error("paper count overflow")]
    Overflow,

    #[error("invalid percentile scheme: {0}")]
    InvalidScheme(String),

    #[error("border {0} is not strictly between 0 and 100")]
    InvalidBorder(String),

    #[error("deviation from F is undefined because the F share is zero")]
    UndefinedDeviation,

    #[error("decrement must be a positive number of papers")]
    InvalidDecrement,

    #[error("cannot move {requested} papers: only {available} are tied at the threshold")]
    InsufficientTiedPapers { requested: u64, available: u64 },

    #[error("cannot decrement papers with zero citations")]
    CannotDecrementZero,

    #[error("year appears more than once")]
    DuplicateYear,

    #[error("the panel contains no years")]
    EmptyPanel,

    #[error("year {year}: {source}")]
    Year {
        year: i32,
        #[source]
        source: Box<Error>,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown counting rule {0:?}")]
    UnknownRule(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
