//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the symbolic kernel and geometry pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("parameter tables do not match")]
    TableMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("unknown basis vector `{0}`")]
    UnknownBasis(String),
    #[error("missing parameter `{0}` in assignment")]
    MissingParameter(String),
    #[error("structure tensor is not antisymmetric")]
    NotAntisymmetric,
    #[error("sectional curvature needs two distinct basis directions")]
    DegeneratePlane,
    #[error("invalid vertical split: {0}")]
    InvalidSplit(String),
    #[error("not a compatible almost complex structure: {0}")]
    InvalidStructure(String),
    #[error("unknown foliation predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("malformed report document: {0}")]
    Report(String),
}

/// A positioned syntax or validation error from one of the text formats.
///
/// Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}
