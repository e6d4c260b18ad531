use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or semantically invalid input (bad JSON, non-Dynkin quiver,
    /// out-of-range vertex, dimension mismatch, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An internal consistency check failed: interpolation mismatch at a
    /// held-out prime, non-unique generic extension, cross-prime disagreement.
    #[error("verification failure: {0}")]
    Verification(String),
    /// A configured enumeration or size limit was hit.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn verify(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub(crate) fn cap(msg: impl Into<String>) -> Self {
        Error::CapExceeded(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Io(_) => 1,
            Error::Verification(_) => 2,
            Error::CapExceeded(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(format!("json: {e}"))
    }
}
