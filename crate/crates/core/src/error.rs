use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Each variant maps to a stable
/// upper-case code used in JSON error objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector is zero")]
    ZeroVector,
    #[error("input is zero")]
    ZeroInput,
    #[error("polynomial is identically zero")]
    ZeroPoly,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("subspace has dimension 0")]
    EmptySubspace,
    #[error("comparison exceeds the size guard of {limit} bits")]
    SizeGuard { limit: u64 },
    #[error("polynomial is not linear in the separated variables: {0}")]
    NotISeparated(String),
    #[error("polynomial is not linear in x{0}")]
    NotLinearInVar(usize),
    #[error("polynomial is not a multilinear form")]
    NotMultilinear,
    #[error("polynomial is not a linear form")]
    NotLinearForm,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("augmented matrix has larger rank at the witness point: {0}")]
    RankHypothesisFailed(String),
    #[error("no witness found within search radius {radius}")]
    SearchExhausted { radius: u64 },
    #[error("avoidance impossible: {0}")]
    AvoidanceImpossible(String),
    #[error("avoidance failed: {0}")]
    AvoidanceFailed(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no rational zero: {0}")]
    NoRationalZero(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZERO_VECTOR",
            Error::ZeroInput => "ZERO_INPUT",
            Error::ZeroPoly => "ZERO_POLY",
            Error::DimMismatch(_) => "DIM_MISMATCH",
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::SingularMatrix => "SINGULAR_MATRIX",
            Error::EmptySubspace => "EMPTY_SUBSPACE",
            Error::SizeGuard { .. } => "SIZE_GUARD",
            Error::NotISeparated(_) => "NOT_I_SEPARATED",
            Error::NotLinearInVar(_) => "NOT_LINEAR_IN_VAR",
            Error::NotMultilinear => "NOT_MULTILINEAR",
            Error::NotLinearForm => "NOT_LINEAR_FORM",
            Error::NotUnivariate => "NOT_UNIVARIATE",
            Error::HypothesisViolated(_) => "HYPOTHESIS_VIOLATED",
            Error::HypothesisFailed(_) => "HYPOTHESIS_FAILED",
            Error::RankHypothesisFailed(_) => "RANK_HYPOTHESIS_FAILED",
            Error::SearchExhausted { .. } => "SEARCH_EXHAUSTED",
            Error::AvoidanceImpossible(_) => "AVOIDANCE_IMPOSSIBLE",
            Error::AvoidanceFailed(_) => "AVOIDANCE_FAILED",
            Error::NotApplicable(_) => "NOT_APPLICABLE",
            Error::NoRationalZero(_) => "NO_RATIONAL_ZERO",
            Error::TooLarge(_) => "TOO_LARGE",
            Error::Internal(_) => "INTERNAL",
        }
    }
}
