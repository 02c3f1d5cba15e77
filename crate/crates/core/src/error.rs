use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field degree m={0}: m must be even with 4 <= m <= 12")]
    InvalidDegree(usize),

    #[error("polynomial {poly:#x} is not primitive of degree {degree}")]
    NotPrimitive { poly: u32, degree: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid level {level}: must lie in 0..={u}")]
    InvalidLevel { level: usize, u: usize },

    #[error("invalid subspace basis: {0}")]
    InvalidSubspace(String),

    #[error("code is already extended")]
    AlreadyExtended,

    #[error("{what} too large: {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("generator {generator} does not stabilize the code: basis word {word} is mapped outside")]
    NotAnAutomorphism { generator: usize, word: usize },

    #[error("codes are not nested: {0}")]
    NotNested(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
