use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),

    /// Exact integer arithmetic exceeded the 128-bit working width, or an
    /// enumeration modulus is too large to iterate. Never silently wraps.
    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(u64, u64),

    #[error("part {part} is not divisible by {divisor}")]
    NonDivisiblePart { part: u64, divisor: u64 },

    #[error("labels lie in different series")]
    SeriesMismatch,

    #[error("semisimple part is not an ell'-label")]
    NotEllPrime,

    /// Fiber-size mismatch in the descent engine. The message carries the
    /// divisibility diagnostic: the column fiber is always a multiple of the
    /// image fiber when the input data is consistent.
    #[error("hypothesis (H) fails at column `{column}`: kappa = {kappa_column} on the column but {kappa_image} on its image{diagnostic}")]
    HypothesisViolation {
        column: String,
        kappa_column: u64,
        kappa_image: u64,
        diagnostic: String,
    },

    #[error("inconsistent transfer data: {0}")]
    InconsistentData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
