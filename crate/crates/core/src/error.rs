use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("empty collection")]
    EmptyCollection,
    #[error("fold {a} out of range 1..={n}")]
    FoldOutOfRange { a: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("height window unsupported: {0}")]
    HeightWindowUnsupported(String),
    #[error("oracle guardrail exceeded: {0}")]
    Guardrail(String),
    #[error("linear-resolution assumption violated: {0}")]
    LinearResolutionViolated(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
