use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("no adjoint: {0}")]
    NoAdjoint(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("missing pullback of cospan {0}")]
    MissingPullback(String),

    #[error("missing weak pullback of cospan {0}")]
    MissingWeakPullback(String),

    #[error("missing weak comprehension of {0}")]
    MissingWeakComprehension(String),

    #[error("no weak evaluation: {0}")]
    NoWeakEvaluation(String),

    #[error("functor does not preserve chosen products: {0}")]
    ProductNotPreserved(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("not an equivalence relation: {0}")]
    NotAnEquivalenceRelation(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("fiber too large to enumerate: {0}")]
    FiberTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
