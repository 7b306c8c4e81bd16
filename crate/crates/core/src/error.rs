use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("modulus {0} is not prime")]
    CompositeModulus(String),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("generators do not span a full lattice")]
    NotFull,
    #[error("lattice is not contained in the other")]
    NotContained,
    #[error("not an order: {0}")]
    NotAnOrder(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("maximal order unavailable: {0}")]
    MaximalOrderUnavailable(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("quotient ring too large: {0}")]
    QuotientTooLarge(String),
    #[error("class is not a unit of the quotient ring")]
    NotAUnitClass,
    #[error("factorization too hard: {0}")]
    FactorizationTooHard(String),
    #[error("outside the decisive domain: {0}")]
    OutsideDecisiveDomain(String),
    #[error("the radical is zero")]
    RadicalZero,
    #[error("minimal polynomial differs from the characteristic polynomial")]
    MinPolyDeficient,
    #[error("lattice is not stable under multiplication by t")]
    NotTStable,
    #[error("the set of orders is infinite; an explicit order list is required")]
    InfiniteWithoutOrderRestriction,
    #[error("table not closed: {0}")]
    NotClosed(String),
    #[error("table not commutative")]
    NotCommutative,
    #[error("table not associative")]
    NotAssociative,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Budget-type failures (the CLI maps these to exit code 3).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::QuotientTooLarge(_) | Error::FactorizationTooHard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
