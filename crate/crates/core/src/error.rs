use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BggError {
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("Cartan matrix is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("not a root: {0:?}")]
    UnknownRoot(Vec<i64>),
    #[error("{what} has dimension {dim}, over the budget of {budget}")]
    DimensionOverBudget { what: String, dim: u64, budget: u64 },
    #[error("module is not completely reducible: {0}")]
    NotCompletelyReducibleInput(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Laplacian is singular on homogeneity block {0}")]
    SingularLaplacianBlock(usize),
    #[error("parse error at token {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("invalid job: {0}")]
    ValidationError(String),
    #[error("components at levels {from} and {to} are not adjacent")]
    NonAdjacentLevels { from: usize, to: usize },
    #[error("certificate failed: {0}")]
    CertificationFailure(String),
}

pub type Result<T> = std::result::Result<T, BggError>;
