//! Exact classical cluster X-mutation machinery over ℚ.
//!
//! Rational expressions in the cluster generators are kept in gcd-reduced
//! canonical form, so equality of mutation composites is decided
//! structurally. Pullback maps compose along mutation and relabeling
//! paths, the log-canonical Poisson bracket carries a central ℓ marker,
//! and expressions evaluate at points with R_Λ coordinates, including the
//! puncture constraint monomials of a triangulated surface.

mod error;
mod eval;
mod mpoly;
mod poisson;
mod pullback;
mod ratexpr;

pub use error::ClassicalError;
pub use eval::{check_puncture_constraint, eval_at_point, theta_monomial, PunctureCheck};
pub use mpoly::{gcd as mpoly_gcd, MPoly};
pub use poisson::{check_poisson_compat, poisson_bracket, CompatReport, PairCheck};
pub use pullback::{
    classical_mutation, compose_pullbacks, permutation_pullback, pullback_along_path,
    pullback_of_move, PullbackMap,
};
pub use ratexpr::RatExpr;
