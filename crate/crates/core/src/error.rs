use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("lattice is not contained in the ambient lattice")]
    NotContained,
    #[error("degree {degree} exceeds truncation {truncation}")]
    Truncation { degree: usize, truncation: usize },
    #[error("FB-module degree {degree}: {relation} fails")]
    Coxeter { degree: usize, relation: String },
    #[error("map is not equivariant: {0}")]
    Equivariance(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("hypothesis not met: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
