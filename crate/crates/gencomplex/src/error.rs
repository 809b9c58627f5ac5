use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by R_Λ / C_Λ arithmetic and the admissible-function calculus.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GcError {
    #[error("Lambda tags do not match: {0} vs {1}")]
    LambdaMismatch(i64, i64),
    #[error("R_0 has no eigenbasis, the ell-part is nilpotent")]
    NotDiagonalizable,
    #[error("argument outside the positive cone: {0}")]
    OutsideDomain(String),
    #[error("ell and ell-star sectors cannot be combined")]
    SectorMismatch,
    #[error("branch function failed to evaluate at {arg}")]
    BranchEval { arg: Complex64 },
    #[error("invalid Lambda value {0}, expected -1, 0, or 1")]
    BadLambda(i64),
}
