use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a supported prime")]
    InvalidModulus(u64),

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("equivariance error: {0}")]
    Equivariance(String),

    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
