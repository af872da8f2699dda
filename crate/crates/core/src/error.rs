use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("operation `{symbol}`: table has {found} entries, expected {expected}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "operation `{symbol}`: entry out of range at index {index} (value {value}, size {size})"
    )]
    EntryOutOfRange {
        symbol: String,
        index: usize,
        value: usize,
        size: usize,
    },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("element {element} out of range for size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("map is not a bijection of the universe")]
    NotBijective,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error(
        "partition is not a congruence: `{symbol}` at argument {coordinate} maps related pair \
         ({}, {}) with arguments {args:?} to unrelated values",
        pair.0, pair.1
    )]
    NotCongruence {
        symbol: String,
        coordinate: usize,
        pair: (usize, usize),
        args: Vec<usize>,
    },

    #[error("map is not surjective")]
    NotSurjective,

    #[error("algebra lacks global support")]
    NoGlobalSupport,

    #[error("congruence enumeration exceeded the limit of {limit} elements")]
    CongruenceLimit { limit: usize },

    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("term error: {0}")]
    Term(String),

    #[error("decomposition tree is not over the given algebra")]
    TreeMismatch,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
