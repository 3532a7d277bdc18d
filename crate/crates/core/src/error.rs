use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,

    #[error("point set is affinely degenerate: affine hull has dimension {affine_dim} < {ambient_dim}")]
    Degenerate { affine_dim: usize, ambient_dim: usize },

    #[error("dimension {0} exceeds the supported maximum of 6")]
    DimensionTooLarge(usize),

    #[error("relator {index} (`{relator}`) is not satisfied by the permutation images")]
    RelatorNotSatisfied { index: usize, relator: String },

    #[error("action is not transitive; orbits: {orbits:?}")]
    Intransitive { orbits: Vec<Vec<usize>> },

    #[error("abelianization has free rank 0; the Alexander polynomial needs rank at least 1")]
    RankZero,

    #[error("invalid triangulation: {0}")]
    Triangulation(String),

    #[error("Pachner move rejected: {0}")]
    Move(String),

    #[error("bad-reduction prime {0}")]
    BadPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
