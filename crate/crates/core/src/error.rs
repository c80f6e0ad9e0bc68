use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field order {0} is not prime")]
    NotPrime(u32),
    #[error("field order {0} is outside the supported range 2..=251")]
    OrderOutOfRange(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different fields (F_{expected} vs F_{found})")]
    FieldMismatch { expected: u8, found: u8 },
    #[error("symbol {symbol:?} is not an element of F_{order}")]
    SymbolOutOfField { symbol: char, order: u8 },
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("malformed subspace text {0:?}")]
    BadSubspace(String),
    #[error("the zero vector does not define a pencil")]
    ZeroVector,
    #[error("empty effect name")]
    EmptyName,
    #[error("factor {letter} is beyond the {m} factors of the experiment")]
    UnknownFactor { letter: char, m: usize },
    #[error("bad exponent in effect {0:?}")]
    BadExponent(String),
    #[error("factor {0} appears twice")]
    DuplicateFactor(char),
    #[error("factors must appear in alphabetical order in {0:?}")]
    FactorOrder(String),
    #[error("cannot parse effect name {0:?}")]
    BadSyntax(String),
    #[error("a plan needs at least one block and one run per block")]
    EmptyPlan,
    #[error("block {block} has {found} runs, expected {expected}")]
    BlockSizeMismatch {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(&'static str),
}
