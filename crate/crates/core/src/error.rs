use alloc::string::String;

/// Errors raised by the estimators, certificates and exact routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix has {got} entries, expected {expected} for dimension {dim}")]
    Shape { dim: usize, expected: usize, got: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("matrix set must have at least one member")]
    EmptySet,

    #[error("member {index} has dimension {got}, expected {expected}")]
    MixedDimensions { index: usize, expected: usize, got: usize },

    #[error("word index {index} out of range for a set of {len} members")]
    WordIndex { index: usize, len: usize },

    #[error("words must have length at least 1")]
    EmptyWord,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is ill-conditioned: condition number {cond:e} exceeds cap {cap:e}")]
    IllConditioned { cond: f64, cap: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    EigenFailure { iterations: usize },

    #[error(
        "enumeration budget exceeded: {words} words needed, cap is {cap}; \
         lower the depth or raise the cap"
    )]
    Budget { words: u128, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("series is not certifiably convergent: r * upper = {product} >= 1")]
    Divergent { product: f64 },

    #[error("rank decision is indeterminate: residual {residual:e} lies in ({lo:e}, {hi:e}); rescale the input")]
    Indeterminate { residual: f64, lo: f64, hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = core::result::Result<T, Error>;
