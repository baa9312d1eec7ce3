use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Index or dimension mismatch between a value and the structure it refers to.
    #[error("structural error: {0}")]
    Structural(String),

    /// Malformed external input (class files, rationals, example lists).
    #[error("parse error: {0}")]
    Parse(String),

    /// A student received a sample outside the teaching protocol.
    #[error("decode error: {0}")]
    Decode(String),

    /// An exhaustive search exceeded its configured budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn decode(msg: impl Into<String>) -> Self {
        Error::Decode(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            _ => 2,
        }
    }
}
