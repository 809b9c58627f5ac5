//! Numerical quantum dilogarithms for the three coefficient rings.
//!
//! The contour evaluator integrates along a slanted half-circle-and-rays
//! path, so the parameter h may sit anywhere in the closed right half plane
//! away from zero; arguments outside the convergence strip are reached
//! through the two difference equations with exactly accumulated
//! multipliers. A compact-product ratio gives an independent route for
//! purely imaginary h, the flat variant has closed and contour forms, and
//! the combined unimodular function ties one member to each Λ. Property
//! suites bundle the cross-checks with their tolerances.

mod compact;
mod contour;
mod error;
mod flambda;
mod flat;
mod phi;
mod quad;
mod suite;

pub use compact::{phi_ih_ratio, psi_compact, psi_truncation_order};
pub use contour::ContourSpec;
pub use error::QdError;
pub use flambda::f_lambda;
pub use flat::{f0, f0_complex, f0_contour};
pub use phi::{
    c_h, check_difference_eqs, locate_zero_pole, nearest_pole, phi, phi_with, DiffEqCheck,
    DiffEqReport, LatticeKind, Method, QDValue, POLE_GUARD,
};
pub use suite::{f_lambda_suite, flat_suite, sb_suite, SuiteCheck, SuiteReport};
