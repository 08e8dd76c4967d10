use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} = {value} is outside {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("dimension {0} is invalid, expected d >= 2")]
    InvalidDimension(u64),

    #[error("{0} requires a finite dimension")]
    InfiniteDimension(&'static str),

    #[error("dimension {d} exceeds the dense-oracle cap of {cap}")]
    DimensionCap { d: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("oracle cross-check failed: {0}")]
    OracleMismatch(String),

    #[error("no convergence within {cap} iterations")]
    NotConverged { cap: usize },

    #[error("recursion depth {n} exceeds the supported maximum {max}")]
    TooManyLevels { n: usize, max: usize },

    #[error("stack invariant violated: {0}")]
    InvariantViolation(String),

    #[error("budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
}

/// Checks `lo <= value <= hi` (closed interval) and rejects NaN.
pub(crate) fn check_closed(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<f64> {
    if value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected,
        })
    }
}

/// Checks `lo < value < hi` (open interval) and rejects NaN.
pub(crate) fn check_open(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<f64> {
    if value > lo && value < hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected,
        })
    }
}
