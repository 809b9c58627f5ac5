use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClusterError {
    #[error("exchange matrix must be square, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("exchange matrix must be skew-symmetric, entry ({i},{j}) breaks it")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("map {images:?} is not a bijection on 0..{rank}")]
    NotABijection { images: Vec<usize>, rank: usize },
    #[error("seed labels must be distinct, {label:?} repeats")]
    DuplicateLabel { label: String },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),
    #[error("flip at arc {arc} would create a self-folded triangle")]
    SelfFoldedFlip { arc: usize },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}
