use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: String, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("minimal root is undefined for a reducible system")]
    Reducible,
    #[error("elements belong to different systems")]
    SystemMismatch,
    #[error("image leaves the codomain span: {0}")]
    NotInvariant(String),
    #[error("configuration failed validation: {0}")]
    NotValidated(String),
    #[error("isotropy closure is inconsistent: {0}")]
    Inconsistent(String),
    #[error("Cartan part is not determined: {0}")]
    Underdetermined(String),
    #[error("nonzero residual: {0}")]
    ResidualNonzero(String),
    #[error("no diagonal alignment: {0}")]
    Unalignable(String),
    #[error("no witness automorphism: {0}")]
    NoWitness(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
