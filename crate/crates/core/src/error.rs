use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator weights must be positive")]
    ZeroWeight,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("expected a single (1-t) factor after cancellation, got denominator {0:?}")]
    DimensionMismatch(Vec<u32>),
    #[error("invalid weight data: {0}")]
    InvalidWeights(String),
    #[error("exponent {0} is not a nonnegative integer")]
    BadExponent(String),
    #[error("degenerate grading: {0}")]
    Degenerate(String),
    #[error("no Type I projection: {0}")]
    NoProjection(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("entry {id}: {msg}")]
    InvalidEntry { id: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for malformed input or I/O failures, false for data that parsed but
    /// failed validation.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::ParseLine { .. } | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
