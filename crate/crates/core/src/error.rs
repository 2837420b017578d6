use thiserror::Error;

/// Errors raised by the library.
///
/// `Invariant` and `NotDivisible` indicate a logic bug rather than bad input;
/// they surface as errors so verification suites can report them instead of
/// aborting the process.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tower index m = {m} is outside the supported range 0..={max}")]
    UnsupportedTower { m: u32, max: u32 },

    #[error("{op}: argument must be nonzero")]
    Domain { op: &'static str },

    #[error("{what} is limited to q <= {cap} (got q = {q})")]
    CapExceeded { what: &'static str, q: u64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not in G2^syl(q): {0}")]
    NotInG2(String),

    #[error("{0} is not a verge pattern")]
    NotVerge(String),

    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: i128 },

    #[error("only defined for q = 3 (got q = {q})")]
    RequiresPrimeField { q: u64 },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
