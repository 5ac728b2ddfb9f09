use thiserror::Error;

/// Errors produced by the fibnorm computation layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence order k must be at least 2, got {0}")]
    InvalidOrder(u32),

    #[error("index must be at least 1, got {0}")]
    InvalidIndex(u64),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("vector must be non-empty")]
    EmptyVector,

    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("norm order 0 is reserved for the product convention; use NormOrder::Zero")]
    ZeroOrder,

    #[error("real norm order must be finite and nonzero, got {0}")]
    InvalidRealOrder(f64),

    #[error("norm value exceeds the floating-point range at {0}-bit precision")]
    RangeOverflow(u32),

    #[error("precision of {have} bits cannot guarantee integer rounding at index {n} ({need} bits required)")]
    InsufficientPrecision { n: u64, have: u32, need: u32 },

    #[error("threshold query requires n >= 2 (every p-norm of a length-1 vector is the same value), got {0}")]
    DegenerateThreshold(u64),

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("benchmark strategies disagree for {quantity} at n={n}: {lhs} != {rhs}")]
    StrategyMismatch {
        quantity: String,
        n: u64,
        lhs: String,
        rhs: String,
    },

    #[error("repetition count must be at least 3, got {0}")]
    TooFewRepetitions(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
