use thiserror::Error;

/// Errors raised by the exact-algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid conductor {0}: must be at least 2")]
    InvalidConductor(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not squarefree or is a degenerate radicand")]
    BadRadicand(i64),
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("group element does not belong to the group acting on this context")]
    NotInGroup,
    #[error("subgroups have different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order {0} exceeds the enumeration bound {1}")]
    BoundExceeded(usize, usize),
    #[error("primitive-element search exhausted (bound {0})")]
    SearchExhausted(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("folded dimension {0} exceeds cap {1} (set GALOIS_CPM_MAX_DIM to raise)")]
    DimensionCap(u128, u64),
    #[error("matrix entry is not fixed by the folding subgroup")]
    NotHFixed,
    #[error("matrix is not decohered by the given idempotents")]
    NotDecohered,
    #[error("zero polynomial has no Sturm sequence")]
    ZeroPolynomial,
    #[error("{0} does not divide the extension degree")]
    NonDivisor(u64),
    #[error("conjugation element is not the involutive conjugation of this context")]
    InvalidDagger,
    #[error("this operation requires a characteristic-0 context")]
    CharacteristicZero,
    #[error("invalid transversal: {0}")]
    BadTransversal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
