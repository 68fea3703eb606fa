use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("terms are not strictly increasing at index {index}")]
    NotStrictlyIncreasing { index: usize },
    #[error("terms at index {index} cannot be separated at the requested precision")]
    PrecisionUnderflow { index: usize },
    #[error("term at index {index} must be a positive integer")]
    NonPositiveTerm { index: usize },
    #[error("log value at index {index} must be non-negative")]
    NegativeLog { index: usize },
    #[error("a prefix cannot mix exact and log-domain terms")]
    MixedRepresentation,
    #[error("precision must lie in [{min}, {max}] bits, got {got}")]
    InvalidPrecision { got: u32, min: u32, max: u32 },
    #[error("sequence too short: need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("floor of term {index} could not be certified at {max_bits} bits")]
    FloorUncertifiable { index: usize, max_bits: u32 },
    #[error("stream is empty")]
    EmptyStream,
    #[error("sigma must be a positive finite number, got {0}")]
    InvalidSigma(f64),
    #[error("no bracket: both endpoints are {0}")]
    NoBracket(&'static str),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("y is not strictly increasing at index {index}")]
    NotIncreasing { index: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParam(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
