use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph text. `offset` is a byte offset into the input.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("graph6 short form supports at most 62 vertices, got {0}")]
    UnsupportedSize(usize),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// More minimal Steiner trees exist than the caller allowed.
    #[error("more than {limit} minimal Steiner trees")]
    Overflow { limit: usize },

    #[error("resource limit: {0}")]
    Resource(String),

    /// A proof-backed construction could not proceed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
