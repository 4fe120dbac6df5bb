use num_bigint::BigInt;
use thiserror::Error;

use crate::extension::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The extension data violates one or more standing hypotheses.
    #[error("invalid extension data: {0}")]
    Validation(ValidationReport),

    /// A multiplicity came out negative; the ramification data cannot come
    /// from an actual curve.
    #[error("ramification data not realizable: multiplicity d_{index} = {value} is negative")]
    Realizability { index: usize, value: BigInt },

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("argument out of range: {0}")]
    Range(String),

    /// An identity that must hold for every valid input failed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
