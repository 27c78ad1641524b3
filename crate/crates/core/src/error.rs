use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid point: the zero vector has no projective class")]
    InvalidPoint,
    #[error("basis vectors are linearly dependent (rank {rank} < {count})")]
    Rank { rank: usize, count: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("signature capacity violated: {0}")]
    Capacity(String),
    #[error("target has no null points")]
    NoNullPoints,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("descriptor error: {0}")]
    Descriptor(String),
    #[error("corpus error: {0}")]
    Corpus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
