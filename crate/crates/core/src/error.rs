use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("entries length {got} does not match product of dims {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("tensor must have at least {min} modes, got {got}")]
    TooFewModes { min: usize, got: usize },

    #[error("tensor too large: {size} entries exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("mode {mode} out of range for a tensor with {order} modes")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("zero tensor: {0}")]
    ZeroTensor(&'static str),

    #[error("wrong dimensions: expected {expected}, got {got:?}")]
    WrongDims { expected: &'static str, got: Vec<usize> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("denominator divisible by {0}; reduction undefined")]
    NotReducible(u32),

    #[error("search space too large: {0}")]
    SearchSpaceOverflow(String),

    #[error("limit is degenerate up to truncation order {0}")]
    DegenerateLimit(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
