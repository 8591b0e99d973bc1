use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("set has infinite Haar measure")]
    MeasureInfinite,

    #[error("space mismatch: {0}")]
    DomainMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("patch too small: {0}")]
    PatchTooSmall(String),

    #[error("point {point} does not lie on the lattice")]
    OffLattice { point: String },
}
