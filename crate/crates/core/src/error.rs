use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two quadratic-field elements over different `sqrt(D)` were combined.
    #[error("discriminant mismatch: sqrt({0}) vs sqrt({1})")]
    DiscriminantMismatch(u32, u32),

    #[error("invalid discriminant {0}: must be a square-free integer greater than 1")]
    InvalidDiscriminant(u64),

    /// The operation is undefined for this argument (negative isqrt, zero to a
    /// negative power, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An exact computation produced a value the algebra rules out. Seeing this
    /// means there is a bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
