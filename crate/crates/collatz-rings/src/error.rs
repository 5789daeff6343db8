use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    RingSpec(String),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("cannot parse {what}: {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("ring has characteristic zero")]
    CharZero,
    #[error("operation requires a characteristic-zero ring")]
    PositiveChar,
    #[error("ring is infinite; enumeration unsupported")]
    InfiniteRing,
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("work budget exceeded (limit {0})")]
    BudgetExceeded(u64),
    #[error("polynomial is not periodic")]
    NotPeriodic,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
