use thiserror::Error;

/// Errors raised by the set calculus, tilings and spectral routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("tile set must contain the origin")]
    OriginMissing,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("set must be nonempty")]
    EmptySet,

    #[error("parameter `{name}` out of range: {message}")]
    Parameter { name: &'static str, message: String },

    #[error("index {index} outside the configured range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("omega too small: alpha(omega; largest tile) = {actual} exceeds the required threshold {required}")]
    OmegaTooSmall { required: f64, actual: f64 },

    #[error("no Følner subsequence in indices 1..={max_index} meets alpha(F_next; F_prev) <= {bound}")]
    SubsequenceNotFound { bound: f64, max_index: usize },

    #[error("no N <= {cap} satisfies the covering inequality for delta = {delta}")]
    CoveringDepthExceeded { delta: f64, cap: usize },

    #[error("matrix of order {size} exceeds the cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("eigensolver failed to converge within {iterations} iterations at index {index}")]
    EigenNonConvergence { index: usize, iterations: usize },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("evaluation failed at eps = {eps}, index = {index}: {source}")]
    Evaluation {
        eps: f64,
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, message: impl Into<String>) -> Error {
    Error::Parameter {
        name,
        message: message.into(),
    }
}
