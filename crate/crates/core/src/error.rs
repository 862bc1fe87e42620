use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// The variants fall into three groups that the CLI maps onto exit codes:
/// bad input (2), size guard (3), and broken mathematical contracts (4).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan specification: {0}")]
    Spec(String),

    #[error("invalid automorphism: {0}")]
    Automorphism(String),

    #[error("automorphism has order {actual}, expected {expected}")]
    Order { expected: u32, actual: u32 },

    #[error("letter {letter} out of range 1..={rank}")]
    Word { letter: usize, rank: usize },

    #[error("vector {0:?} is not a root")]
    Root(Vec<i32>),

    #[error("elements belong to different root systems")]
    Mismatch,

    #[error("enumeration of {size} elements exceeds guard {limit}")]
    Guard { size: u128, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    /// A theorem-backed invariant failed. This is the bug alarm.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iteration that must terminate did not.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Guard { .. } => 3,
            Error::Contract(_) | Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
