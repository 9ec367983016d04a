use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("matrix is not an invertible {expected}x{expected} automorphism")]
    InvalidAutomorphism { expected: usize },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("monomial {0} is not faithful")]
    NotFaithful(String),

    #[error("trivial representation not allowed here")]
    TrivialRep,

    #[error("invalid characteristic function: {0}")]
    InvalidCharacteristic(String),

    #[error("fixed point {vertex} is not isolated: factor {factor} restricts to zero")]
    NonIsolated { vertex: String, factor: String },

    #[error("invalid subset family: {0}")]
    InvalidFamily(String),

    #[error("generator {index} is not in the image: {reason}")]
    Inconsistent { index: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not regular: {0}")]
    Irregular(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
