use thiserror::Error;

use crate::projgeom::PointId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field order q={0}: expected a prime or the square of a prime, at most 9")]
    UnsupportedOrder(u32),
    #[error("unsupported projective dimension N={0}: expected 2..=5")]
    UnsupportedDimension(usize),
    #[error("field element {elem} out of range for GF({q})")]
    ElementOutOfRange { elem: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("missing second operand for binary field operation")]
    MissingOperand,
    #[error("vector has {got} coordinates, expected {expected}")]
    WrongArity { got: usize, expected: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point id {0} out of range")]
    PointOutOfRange(PointId),
    #[error("a line needs two distinct points, got {0} twice")]
    SamePoint(PointId),
    #[error("line conflicts with the spread at point {point}")]
    Conflict { point: PointId },
    #[error("lemma precondition violated: {0}")]
    LemmaPrecondition(String),
    #[error("no candidate line through point {0} survived the skewness screen; geometry invariant broken")]
    LemmaExhausted(PointId),
    #[error("ladder step {k} out of range: at most {max} steps for q={q}")]
    LadderRange { k: usize, max: usize, q: u32 },
    #[error("ladder precondition violated: {0}")]
    LadderPrecondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("bounds are tabulated only for q in {{2,3,4,5,7}}, got q={0}")]
    NoBounds(u32),
    #[error("malformed certificate, line {line}: {msg}")]
    Certificate { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
