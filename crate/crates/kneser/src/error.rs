use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneserError {
    /// Parameters outside the domain of the requested operation.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A configured search or enumeration limit was hit.
    #[error("budget exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    /// A construction that must succeed under its hypotheses did not.
    #[error("structural failure: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, KneserError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(KneserError::InvalidParams(msg.into()))
}
