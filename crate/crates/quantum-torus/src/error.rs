use classical_x::ClassicalError;
use cluster_core::ClusterError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("operands live over different quantum torus contexts")]
    ContextMismatch,
    #[error("index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("element is not a single invertible word")]
    NonInvertible,
    #[error("coefficient is not a unit")]
    CoeffNotUnit,
    #[error("coefficient has a pole at q = 1")]
    PoleAtOne,
    #[error("division by the zero element")]
    DivisionByZero,
    #[error("series sign must be +1 or -1, got {0}")]
    InvalidSign(i8),
    #[error("starred coefficients only exist in the Λ = 0 doubling")]
    StarredSlotUnavailable,
    #[error("matrix model order must be at least 2, got {0}")]
    ModelOrderTooSmall(usize),
    #[error("matrix model dimension {dim} exceeds the desk-scale cap {cap}")]
    ModelTooLarge { dim: usize, cap: usize },
    #[error("generator relations miss the target residual at N = {n_order} (residual {residual:.3e})")]
    ModelResidual { n_order: usize, residual: f64 },
    #[error("binomial factor is numerically singular at N = {n_order}; pick an odd N coprime to the exchange entries")]
    SingularBinomial { n_order: usize },
    #[error("move sequence does not return to its starting exchange matrix")]
    RelationNotClosed,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
}
