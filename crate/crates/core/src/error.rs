use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants that describe internal consistency failures (`ResidueMismatch`,
/// `ReconstructionMismatch`) indicate an arithmetic or recipe bug rather than
/// bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KncError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {}", .0.join("; "))]
    InvalidConfig(Vec<String>),
    #[error("point index {p} out of range 1..={k}")]
    PointIndex { p: usize, k: usize },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("pole off the marked set: {0}")]
    PoleOffMarkedSet(String),
    #[error("residue theorem violated: in-sum {in_sum}, out-sum {out_sum}")]
    ResidueMismatch { in_sum: String, out_sum: String },
    #[error("reconstruction mismatch: {0}")]
    ReconstructionMismatch(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("window too small: need {needed}, have {have}")]
    WindowTooSmall { needed: i64, have: i64 },
    #[error("cocycle not bounded in window: {0}")]
    NotBounded(String),
    #[error("singular system at level {0}")]
    Singular(i64),
    #[error("property check failed: {0}")]
    PropertyFailed(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
