use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("an isometry cannot map {domain} dimensions into {codomain}")]
    Shape { domain: usize, codomain: usize },

    #[error("columns are not orthonormal (deviation {0:e})")]
    NotIsometric(f64),

    #[error(
        "matrix has a non-real entry (imaginary part {0:e}); it does not commute with conjugation"
    )]
    NotConjugationCommuting(f64),

    #[error("expected Fredholm index {expected}, found {found}")]
    IndexMismatch { expected: i64, found: i64 },

    #[error("dimension {0} is odd; a polarization needs an even dimension")]
    OddDimension(usize),

    #[error("vector is not in the polarization subspace (residual {0:e})")]
    NotInPolarization(f64),

    #[error("generator index {index} out of range for {dim} generators")]
    GeneratorOutOfRange { index: usize, dim: usize },

    #[error("{dim} generators exceed the cap of {cap}")]
    TooManyGenerators { dim: usize, cap: usize },

    #[error("degree {degree} exceeds the number of generators {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
}
