use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {0:?}")]
    InvalidType(String),

    #[error("vector is not a root of {system}: {coords:?}")]
    NotARoot { system: String, coords: Vec<i64> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// `order` saturates at `u128::MAX` for very large ranks.
    #[error(
        "Weyl group of {system} has {} elements, above the safety cap of {cap}",
        if *order == u128::MAX { "more than 2^127".to_string() } else { order.to_string() }
    )]
    GroupTooLarge {
        system: String,
        order: u128,
        cap: usize,
    },

    #[error("cannot parse element {input:?}: {reason}")]
    ElementParse { input: String, reason: String },

    #[error("element index {0} is not in the group")]
    NotInGroup(usize),

    #[error("variable index {index} out of range for a polynomial in {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("polynomial is not a quadratic form: {0}")]
    NotQuadratic(String),

    #[error("support vectors have mixed lengths ({0} and {1})")]
    MixedLengths(usize, usize),

    #[error("dominant weight required, got negative entry {value} at position {index}")]
    NotDominant { index: usize, value: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed polynomial JSON: {0}")]
    PolyFormat(String),
}
