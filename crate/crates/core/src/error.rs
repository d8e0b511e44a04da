use thiserror::Error;

/// Errors raised by the analytic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element {value} exceeds the configured cap {cap}")]
    ElementTooLarge { value: u64, cap: u32 },

    #[error("malformed literal at token `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("unsupported dimension {0}; at most 3 is supported")]
    UnsupportedDimension(usize),

    #[error("no (c, b) parametrization for k={k}, T={t}, d={d}")]
    NoParametrization { k: u64, t: u64, d: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
