use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("expected the next prime after {after} (which is {expected}), got {got}")]
    NotNextPrime { after: u64, expected: u64, got: u64 },

    #[error("{what} ceiling exceeded at {value} (ceiling {ceiling}): {detail}")]
    Capacity {
        what: &'static str,
        value: u64,
        ceiling: u64,
        detail: String,
    },

    #[error("gap {0} must be a positive even integer")]
    InvalidGap(u64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("transfer at p={p} would give row j={row} of gap {gap} the negative coefficient p-j-1")]
    RowUnderflow { p: u64, gap: u64, row: usize },

    #[error("exact propagation needs {steps} steps, over the limit of {limit}; switch to normalized mode")]
    StepLimit { steps: usize, limit: usize },

    #[error("degree {degree} needs {need} coefficients but only {have} driving-term entries are tracked")]
    DegreeTooLarge {
        degree: usize,
        need: usize,
        have: usize,
    },

    #[error("h={h} is not a gap class modulo {base}")]
    NotAGapClass { base: u64, h: u64 },

    #[error("no mass in the normalizing class {class} modulo {base}")]
    EmptyNormalizingClass { base: u64, class: u64 },

    #[error("base {0} must be at least 3")]
    BaseTooSmall(u64),

    #[error("lambda {0} must lie in (0, 1)")]
    LambdaOutOfRange(f64),

    #[error("lambda {lambda} implies a prime magnitude below p0={p0}")]
    LambdaBelowBase { lambda: f64, p0: u64 },

    #[error("census format: {0}")]
    CensusFormat(String),

    #[error("census shapes differ: {0}")]
    CensusMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
