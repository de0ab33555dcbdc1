use thiserror::Error;

use crate::patterns::Cell;

/// Errors raised by library operations.
///
/// Every variant is a domain error: the input was well-formed enough to be
/// parsed but the requested operation cannot be carried out on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("padding of the component anchored at {anchor} leaves the pattern domain")]
    PaddingUnavailable { anchor: Cell },
    #[error("cannot zero-glue: both patterns define {cell} and one of them is nonzero there")]
    GlueConflict { cell: Cell },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("dimension mismatch: expected {expected}D, found {found}D")]
    DimensionMismatch { expected: u8, found: u8 },
    #[error("coordinate overflow")]
    CoordinateOverflow,
    #[error("output of {requested} cells exceeds the cap of {cap}")]
    SizeLimit { requested: u128, cap: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("radii must be strictly increasing")]
    RadiiNotIncreasing,
    #[error("pattern has empty support")]
    EmptySupport,
    #[error("rule does not map the all-zero neighbourhood to zero")]
    NotZeroPreserving,
    /// `second` is the other preimage, or `None` when the window has none.
    #[error("element is not invertible: {}", not_invertible(first, second.as_deref()))]
    NotInvertible { first: String, second: Option<String> },
    #[error("injection repeats the prime {0}")]
    InjectionNotDistinct(u64),
    #[error("injection contains the non-prime {0}")]
    InjectionNotPrime(u64),
    #[error("no prime found in the first {0} terms of the progression")]
    NoPrimeInRange(u64),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn not_invertible(first: &str, second: Option<&str>) -> String {
    match second {
        Some(s) => format!("words {first} and {s} have the same image"),
        None => format!("window {first} has no preimage"),
    }
}
