use thiserror::Error;

/// Errors raised by the analysis and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data (channels, graphs, edge lists).
    #[error("validation error: {0}")]
    Validation(String),

    /// A root search found no sign change on its bracket.
    #[error("numeric error: no sign change on [{lo}, {hi}] ({what})")]
    NoBracket { what: String, lo: f64, hi: f64 },

    /// A grid scan found no crossing.
    #[error("numeric error: no crossing found ({0})")]
    NoCrossing(String),

    /// The dense oracle refuses problems beyond its qubit cap.
    #[error("resource error: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for failures of a numerical procedure rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NoBracket { .. } | Error::NoCrossing(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
