//! Arithmetic over the generalized complex numbers R_Λ = R[ℓ]/(ℓ² + Λ).
//!
//! The ring is tagged at runtime by the sign Λ ∈ {-1, 0, +1}. Values are
//! pairs (re, im) representing re + ℓ·im. The crate provides exact rational
//! and floating-point backends behind the same operation signatures, the
//! 2x2 matrix realization, diagonalization for Λ = ±1, exp and log between
//! R_Λ and its positive cone, the complexified ring C_Λ with its star
//! structure, and evaluation of admissible functions through their matrix
//! form.

mod admissible;
mod complexified;
mod error;
mod scalar;

pub use admissible::{apply_admissible, AdmissibleFn, BranchC, BranchR};
pub use complexified::{gcc_add, gcc_mul, gcc_scale, gcc_star, Sector, GCC};
pub use error::GcError;
pub use scalar::{
    gc_add, gc_conj, gc_diagonalize, gc_embed, gc_exp, gc_log, gc_mul, gc_neg, gc_sub, GcScalar,
    Lambda, GC,
};

/// Floating-point backend.
pub type GCf = GC<f64>;
/// Exact rational backend.
pub type GCr = GC<num::BigRational>;
