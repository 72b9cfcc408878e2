use thiserror::Error;

/// Errors raised by graph construction, parsing and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// The quantity is undefined for this input (e.g. a bound whose
    /// denominator vanishes on an edgeless graph).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("generator spec parse error at position {position}: {message}")]
    SpecParse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
