//! Exchange matrices, seeds, quiver mutation, index permutations,
//! ideal-triangulation combinatorics, and puncture constraint vectors.
//!
//! The combinatorial backbone of the cluster machinery: skew-symmetric
//! integer exchange matrices with the mutation and relabeling actions,
//! seeds that remember their move history, triangulations of punctured
//! surfaces encoded as corner-labeled oriented triangles, the flip move,
//! and exact integer kernels of the exchange form.

mod error;
mod exmat;
mod seed;
mod tri;

pub use error::ClusterError;
pub use exmat::{kernel_vectors, mutate_exmat, permute_exmat, ExMat, Perm, ThetaTag, ThetaVec};
pub use seed::{Move, Seed};
pub use tri::{exmat_from_tri, flip_tri, theta_from_punctures, Tri};
