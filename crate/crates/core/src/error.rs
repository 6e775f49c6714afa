use thiserror::Error;

/// Errors raised by the counting kernels, series arithmetic and invariant pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension vector has {got} entries but the quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arrow endpoint `{0}` is not a declared vertex")]
    UnknownVertex(String),

    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quiver is not totally negative: {0}")]
    NotTotallyNegative(String),

    #[error("budget exceeded for {what}: needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("identity check failed: {0}")]
    Identity(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Budget,
    Identity,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Budget { .. } => ErrorKind::Budget,
            Error::Identity(_) => ErrorKind::Identity,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            needed: needed.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
