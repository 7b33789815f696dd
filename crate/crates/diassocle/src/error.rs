use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
