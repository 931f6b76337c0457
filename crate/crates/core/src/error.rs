use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("element belongs to a different algebra")]
    ForeignElement,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("twisting map is not multiplicative at basis pair ({i}, {j})")]
    NotMultiplicative { i: usize, j: usize },

    #[error("map is not a weak morphism at basis pair ({i}, {j})")]
    NotWeakMorphism { i: usize, j: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not an idempotent")]
    NotIdempotent,

    #[error("twisting map is not surjective (rank {rank} < {dim})")]
    AlphaNotSurjective { rank: usize, dim: usize },

    #[error("algebra is not right Hom-alternative")]
    NotRightHomAlternative,

    #[error("linear system has no solution")]
    Inconsistent,

    #[error("variable {0:?} has no assigned value")]
    UnassignedVariable(String),

    #[error("negative power of a singular twisting map")]
    SingularTwist,

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}

impl AlgebraError {
    /// Whether the error reports an unmet mathematical precondition rather
    /// than malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            AlgebraError::NotMultiplicative { .. }
                | AlgebraError::NotWeakMorphism { .. }
                | AlgebraError::NotIdempotent
                | AlgebraError::AlphaNotSurjective { .. }
                | AlgebraError::NotRightHomAlternative
                | AlgebraError::SingularTwist
                | AlgebraError::Inconsistent
        )
    }
}
