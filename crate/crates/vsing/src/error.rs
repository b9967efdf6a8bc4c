//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("charge mismatch: {0} vs {1}")]
    ChargeMismatch(i64, i64),

    #[error("module parameter mismatch")]
    ParamsMismatch,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("element is not weight-homogeneous")]
    NonHomogeneous,

    #[error(
        "screening operator is only defined on charge 0 (got charge {0}: fractional x-exponent)"
    )]
    UnsupportedCharge(i64),

    #[error("hypotheses not satisfied: {0}")]
    HypothesisViolation(String),

    #[error("no coefficient annihilates the relation (residual terms: {residual_small} at 3/(2p), {residual_big} at 2p/3)")]
    NoUniqueCoefficient {
        residual_small: usize,
        residual_big: usize,
    },

    #[error("state does not lie in the requested span: {0}")]
    NotInSpan(String),

    #[error("leading coordinate is not uniquely determined by the spanning set")]
    AmbiguousCoordinate,

    #[error("eigenvalue recursion is not triangular: {0}")]
    NonTriangular(String),

    #[error("engine disagreement: {0}")]
    EngineMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
