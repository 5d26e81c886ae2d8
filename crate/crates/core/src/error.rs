use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modules live over different primes ({0} vs {1})")]
    FieldMismatch(u32, u32),

    #[error("not a k[T]/T^p module: the action matrix does not satisfy N^{p} = 0")]
    NotNilpotent { p: u32 },

    #[error("invariant {part} out of range [1, {p}]")]
    InvariantOutOfRange { part: usize, p: u32 },

    #[error("the zero element has no summand behaviour")]
    ZeroElement,

    #[error("truncated polynomial with zero constant term is not invertible")]
    NotInvertible,

    #[error("module is not a permutation module (invariants {0:?})")]
    NotPermutation(Vec<usize>),

    #[error("module is not cyclic (invariants {0:?})")]
    NotCyclic(Vec<usize>),

    #[error("map does not intertwine the T-actions")]
    NotEquivariant,

    #[error("{x} is out of range for p = {p}: {reason}")]
    OutOfRange {
        x: usize,
        p: u32,
        reason: &'static str,
    },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid input: {0}")]
    Input(String),
}
