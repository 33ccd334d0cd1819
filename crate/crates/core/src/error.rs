use thiserror::Error;

/// Errors raised by the library. The CLI maps `Parse` and `Dimension` to
/// exit status 2 and everything else to exit status 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("inequality system is infeasible")]
    Infeasible,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Dimension(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
