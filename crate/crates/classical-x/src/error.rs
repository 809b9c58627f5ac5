use cluster_core::ClusterError;
use gencomplex::GcError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("pullback composition mismatch: first map's target seed differs from second map's source seed")]
    SeedMismatch,
    #[error("division by the zero rational expression")]
    DivisionByZero,
    #[error("denominator {factor} evaluates to a non-unit")]
    NonUnitDenominator { factor: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Gc(#[from] GcError),
}
