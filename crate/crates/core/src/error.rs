use thiserror::Error;

/// Errors surfaced by the library. `Domain` covers inputs that violate a
/// mathematical precondition (non-chamber endpoints, unreachable targets);
/// everything else is a structural misuse of the API.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
