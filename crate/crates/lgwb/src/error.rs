use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("redundant facet at index {0}")]
    RedundantFacet(usize),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("mismatched parameter rings")]
    ParamMismatch,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("zero denominator produced by substitution")]
    ZeroDenominator,

    #[error("zero coordinate in evaluation point")]
    ZeroCoordinate,

    #[error("unassigned parameter {0}")]
    UnassignedParameter(String),

    #[error("negative power of a non-monomial polynomial")]
    NegativePower,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polytope is not Delzant: {0}")]
    NotDelzant(String),

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("no Newton seed converged: {0}")]
    NoSeedConverged(String),

    #[error("degenerate critical point recovery: {0}")]
    DegenerateRecovery(String),

    #[error("substitution map is not purely monomial")]
    NotMonomial,

    #[error("monomial map is not invertible over the integers")]
    NotUnimodular,

    #[error("correction factor must have constant term 1")]
    BadCorrectionFactor,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
