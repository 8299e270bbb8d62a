use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero vector has no sign pattern")]
    ZeroVector,

    #[error("pool contains the zero vector at index {0}")]
    ZeroInPool(usize),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("{what} is {actual}, above the limit of {limit} (raise it with the matching --max-* flag)")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("{message} at {path}")]
    Parse { path: String, message: String },

    #[error("sign vector is not realized in this cell complex")]
    UnrealizedCovector,

    #[error("cell complex is not regular: the zero covector spans a sphere of dimension {0}")]
    NonRegularComplex(usize),

    #[error("complex has no involution")]
    MissingInvolution,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
