use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0}")]
    Conductor(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("not a superpotential: {0}")]
    NotSuperpotential(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("group: {0}")]
    Group(String),
    #[error("representation data: {0}")]
    Representation(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
