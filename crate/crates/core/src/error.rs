use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the risk library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid specification `{input}`: {message}")]
    Spec { input: String, message: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty sample")]
    EmptySample,

    #[error("{0}")]
    Domain(String),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}

pub(crate) fn check_level(name: &'static str, value: f64) -> Result<()> {
    check(
        (0.0..=1.0).contains(&value),
        name,
        value,
        "must lie in [0, 1]",
    )
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<()> {
    check(value.is_finite(), name, value, "must be finite")
}
