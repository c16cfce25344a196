use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not invertible over the Laurent ring: determinant {det} is not a monomial")]
    NotInvertibleOverLaurentRing { det: String },

    #[error("invalid bundle datum: {0}")]
    InvalidBundle(String),

    #[error("factorization search exhausted: {0}")]
    InternalSearchExhausted(String),

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("point {point} is not a singularity of the first kind")]
    NotFirstKind { point: String },

    #[error("equation is not Fuchsian: {point} is an irregular singular point")]
    NotFuchsian { point: String },

    #[error("resonant exponents: two eigenvalues of the residue differ by {gap}")]
    ResonantExponents { gap: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
