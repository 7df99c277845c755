use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed input data: wrong dimensions, bad field, bad indices.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("not a complex: composite of differentials is nonzero in degree {degree}")]
    NotAComplex { degree: usize },

    /// An axiom check failed on otherwise well-formed input.
    #[error("validation failed: {0}")]
    Validation(String),

    /// An operation was called outside of its preconditions.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error(
        "resource guard: matrix `{matrix}` of size {rows}x{cols} needs about {bytes} bytes, \
         above the limit of {limit} bytes"
    )]
    Resource { matrix: String, rows: usize, cols: usize, bytes: u64, limit: u64 },

    /// A requested bidegree lies outside the computed window.
    #[error("window error: {0}")]
    Window(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}
