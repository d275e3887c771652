use std::path::PathBuf;

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input must be a positive integer, got 0")]
    Zero,

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("exponent {0} is not prime")]
    InvalidExponent(u64),

    #[error("invalid range [{lo}, {hi}): {reason}")]
    Range { lo: u64, hi: u64, reason: String },

    #[error("{n} exceeds the pseudoperfect cap {cap}")]
    CapExceeded { n: u64, cap: u64 },

    #[error("{0} is not an even perfect number")]
    NotPerfect(u64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("construction {provenance} failed verification: {detail}")]
    VerificationFailed { provenance: String, detail: String },

    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error("checkpoint {path} belongs to a different survey: {reason}")]
    ConfigMismatch { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    pub(crate) fn range(lo: u64, hi: u64, reason: impl Into<String>) -> Self {
        Error::Range {
            lo,
            hi,
            reason: reason.into(),
        }
    }
}
