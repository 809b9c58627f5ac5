//! Quantum torus algebras attached to an exchange matrix and the quantum
//! mutation maps between them.
//!
//! Elements are sums of invertible words, each a product of binomial
//! factors (1 + q^m X_k)^{±1} and one Weyl-ordered monomial, kept in a
//! canonical normalized form with exact coefficients. Mutation splits into
//! a monomial part and an automorphism part, composites along move paths
//! stay factored, and three independent backends check the exchange-graph
//! relations: the classical q = 1 limit, power series in ℚ(q) against the
//! q-exponential that solves ψ(q²z) = (1+qz)ψ(z), and clock-and-shift
//! matrix models at roots of unity.

mod algebra;
mod coeff;
mod error;
mod matrix;
mod mutation;
mod qrat;
mod series;

pub use algebra::{q_mul, rational, AlgCtx, Binom, QElem, QSlot, WeylMonomial, Word};
pub use coeff::QCoeff;
pub use error::QuantumError;
pub use matrix::{build_matrix_model, verify_relation_numeric, MatrixModel, NumericReport, RelationCheck};
pub use mutation::{
    classical_limit, compose_quantum, composite_classical_images, identity_composite,
    mu_prime, mu_quantum, mu_quantum_lambda, mu_sharp, quantum_pullback_along_path,
    quantum_step, CompositeMap, QWordMap,
};
pub use qrat::QRat;
pub use series::{
    psi_difference_residual, psi_series, verify_psi_pentagon, verify_psi_pentagon_with,
    verify_sharp_is_psi_conjugation, ConjugationReport, GenCheck, PentagonReport, QSeries,
};
