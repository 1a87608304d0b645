use thiserror::Error;

/// Errors raised by the group kernel, the constructors and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table side {side} is not a power of the prime {p}")]
    OrderNotPrimePower { side: usize, p: u32 },
    #[error("element 0 is not a two-sided identity (fails at element {element})")]
    NoIdentityAtZero { element: usize },
    #[error("table is not a Latin square: {what} {index} repeats or leaves range")]
    NotLatinSquare { what: &'static str, index: usize },
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { element: usize, conjugator: usize },
    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("group order {order} exceeds the construction cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("invalid action for C{n} x| C{m}: multiplier {k} (need gcd(k,n)=1 and k^m = 1 mod n)")]
    InvalidAction { n: u64, m: u64, k: i64 },
    #[error("factors are p-groups for different primes ({left} and {right})")]
    MixedPrimes { left: u32, right: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unknown catalog group {0:?}")]
    UnknownCatalogName(String),
    #[error("group was not built as a direct product")]
    NotADirectProduct,
    #[error("group is not abelian: {x}*{y} != {y}*{x}")]
    NotAbelian { x: usize, y: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no normal complement exists for the given subgroup")]
    NoNormalComplement,
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("unknown generator label {0:?}")]
    UnknownGenerator(String),
    #[error("table file: {0}")]
    TableFile(String),
    #[error("{0}")]
    Parse(#[from] crate::construct::dsl::ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
