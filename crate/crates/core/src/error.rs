use thiserror::Error;

/// Errors raised by the library and surfaced by the CLI and C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("valuation of 0 is undefined")]
    ZeroValuation,

    #[error("invalid digit expansion: {0}")]
    InvalidDigits(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{family}: precondition failed: {reason}")]
    Precondition { family: &'static str, reason: String },

    #[error("oracle capacity exceeded: n = {n} > n_max = {n_max}")]
    OracleCapacity { n: u64, n_max: u64 },

    #[error("value does not fit in 64 bits")]
    Overflow,
}

impl Error {
    /// True for failures of a mathematical precondition, as opposed to
    /// malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Precondition { .. } | Error::OracleCapacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
