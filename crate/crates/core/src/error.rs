use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("assignment for `{0}` is not affine")]
    NotAffine(String),
    #[error("series truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: leading coefficient is not the unit")]
    NotInvertible,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluations violate the declared multi-order bound at argument tuple {0}")]
    BoundViolation(String),
    #[error("obstruction at order {order} is not closed: {detail}")]
    NotClosed { order: usize, detail: String },
    #[error("operator series leaves the commutant at order {0}")]
    NotInCommutant(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
