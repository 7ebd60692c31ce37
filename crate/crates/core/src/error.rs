use thiserror::Error;

use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Exact division left a nonzero remainder. This is data, not a crash:
    /// integrality claims are tested by looking for it.
    #[error("not divisible (remainder has degree {})", .remainder.degree().map_or(-1, |d| d as i64))]
    NotDivisible { remainder: Polynomial },

    /// An exhaustive enumeration would exceed the configured cap.
    #[error("enumeration refused: projected {projected} tilings exceeds cap {cap}")]
    CapExceeded { projected: String, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
