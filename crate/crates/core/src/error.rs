//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("cannot divide by a0: the a0-order-0 part is non-zero")]
    ConstantTermNotZero,

    #[error("known order exhausted: nothing is known below a0-order 0")]
    OrderExhausted,

    #[error("comparison through a0-order {asked} exceeds the known order {known}")]
    OrderExceeded { asked: u32, known: u32 },

    #[error("series argument must contain derivative generators only")]
    NotScalarSeries,

    #[error("series argument must vanish at a0-order 0")]
    SeriesConstantNotZero,

    #[error("series argument must equal 1 at a0-order 0")]
    SeriesConstantNotOne,

    #[error("the one-form sector of family {family} does not close over the coordinate module")]
    FamilyNotClosed { family: String },

    #[error("no expansion over basis words up to degree {max_degree}: unmatched monomial `{monomial}` at a0-order {order}")]
    NoBasisExpansion {
        monomial: String,
        order: u32,
        max_degree: u32,
    },

    #[error("symbol `{0}` is absent from the realization table")]
    SymbolMissing(String),

    #[error("abstract expressions admit coordinate and one-form symbols only; found `{0}`")]
    NamespaceMix(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
