use thiserror::Error;

/// Errors raised by the metric computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("features have {features} values but outcomes have {outcomes}")]
    LengthMismatch { features: usize, outcomes: usize },

    /// 1-based position of the first non-finite value.
    #[error("non-finite value at position {0}")]
    NonFiniteValue(usize),

    #[error("at least two instances are required, got {0}")]
    TooFewInstances(usize),

    #[error("all outcomes are equal; at least two distinct outcome values are required")]
    DegenerateOutcomes,

    #[error("binary outcome needs at least one positive and one negative instance")]
    SingleClassOutcome,

    #[error("invalid thinning parameters a={a}, b={b} for {frames} frames")]
    InvalidThinningParams { a: usize, b: usize, frames: usize },

    #[error("grid size {0} is too coarse, need at least 2")]
    GridTooCoarse(usize),

    #[error("weight vector does not match the movie's class structure")]
    MovieWeightMismatch,

    #[error("ties present in {0}; the plain rank formula requires distinct values")]
    TiesPresent(&'static str),

    #[error("ties present in outcomes; the mid-rank adjusted formula requires distinct outcomes")]
    TiesInOutcomes,

    #[error("value {0} is outside [-1, 1]")]
    OutOfRange(f64),

    #[error("covariance matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("integer overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("pairwise evaluation is quadratic; n = {n} exceeds the cap of {cap}")]
    PairwiseTooLarge { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
