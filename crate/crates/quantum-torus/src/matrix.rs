use crate::algebra::{QSlot, Word};
use crate::coeff::QCoeff;
use crate::error::QuantumError;
use crate::mutation::{quantum_pullback_along_path, CompositeMap, Factor, FactorTree};
use cluster_core::{ExMat, Move, Seed};
use nalgebra::DMatrix;
use num::ToPrimitive;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Arc;

const DIM_CAP: usize = 2048;
const BUILD_RESIDUAL_CAP: f64 = 1e-8;

type CMat = DMatrix<Complex64>;

/// Finite-dimensional representation of the quantum torus at the root of
/// unity q = e^{2πi/N}: generator i acts on (ℂ^N)^{⊗rank} as the clock
/// matrix on factor i times shift powers S_f^{ε_fi} on every factor, so
/// that W_i W_j = q^{2ε_ij} W_j W_i.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    n_order: usize,
    rank: usize,
    dim: usize,
    gens: Vec<CMat>,
    residual: f64,
}

fn clock_shift(n: usize, clock: i64, shift: i64, omega: f64) -> CMat {
    DMatrix::from_fn(n, n, |x, y| {
        let src = (y as i64 + shift).rem_euclid(n as i64) as usize;
        if src == x {
            Complex64::from_polar(1.0, omega * (clock * x as i64) as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn build_matrix_model(e: &ExMat, n_order: usize) -> Result<MatrixModel, QuantumError> {
    if n_order < 2 {
        return Err(QuantumError::ModelOrderTooSmall(n_order));
    }
    let rank = e.rank();
    let dim_wide = (n_order as u128).pow(rank as u32);
    if dim_wide > DIM_CAP as u128 {
        return Err(QuantumError::ModelTooLarge {
            dim: dim_wide.min(usize::MAX as u128) as usize,
            cap: DIM_CAP,
        });
    }
    let dim = dim_wide as usize;
    let omega = TAU / n_order as f64;
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut acc = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for f in 0..rank {
            let clock = if f == i { 1 } else { 0 };
            let local = clock_shift(n_order, clock, e.get(f, i), omega);
            acc = acc.kronecker(&local);
        }
        gens.push(acc);
    }
    let mut model = MatrixModel {
        n_order,
        rank,
        dim,
        gens,
        residual: 0.0,
    };
    let mut residual = 0.0f64;
    for i in 0..rank {
        for j in (i + 1)..rank {
            let lhs = &model.gens[i] * &model.gens[j];
            let rhs = (&model.gens[j] * &model.gens[i]) * model.omega_pow(2 * e.get(i, j));
            let dev = (&lhs - &rhs).norm() / rhs.norm();
            residual = residual.max(dev);
        }
    }
    model.residual = residual;
    if residual > BUILD_RESIDUAL_CAP {
        return Err(QuantumError::ModelResidual { n_order, residual });
    }
    Ok(model)
}

impl MatrixModel {
    pub fn n_order(&self) -> usize {
        self.n_order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, i: usize) -> Result<&CMat, QuantumError> {
        self.gens.get(i).ok_or(QuantumError::IndexOutOfRange {
            index: i,
            rank: self.rank,
        })
    }

    /// Largest relative deviation of the defining relations at build time.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// q^e as a complex number, reduced mod N before exponentiation.
    pub fn omega_pow(&self, e: i64) -> Complex64 {
        let r = e.rem_euclid(self.n_order as i64);
        Complex64::from_polar(1.0, TAU * r as f64 / self.n_order as f64)
    }

    fn coeff_value(&self, c: &QCoeff) -> Result<Complex64, QuantumError> {
        if c.uses_star() {
            return Err(QuantumError::StarredSlotUnavailable);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((m, _), r) in c.terms() {
            let x = r.to_f64().unwrap_or(f64::NAN);
            acc += self.omega_pow(*m) * x;
        }
        Ok(acc)
    }

    fn gen_power(&self, i: usize, e: i64) -> CMat {
        let base = if e >= 0 {
            self.gens[i].clone()
        } else {
            self.gens[i].adjoint()
        };
        let mut acc = DMatrix::identity(self.dim, self.dim);
        for _ in 0..e.unsigned_abs() {
            acc = acc * &base;
        }
        acc
    }

    fn invert(&self, m: &CMat) -> Result<CMat, QuantumError> {
        let inv = m
            .clone()
            .try_inverse()
            .ok_or(QuantumError::SingularBinomial {
                n_order: self.n_order,
            })?;
        let check = (m * &inv - DMatrix::<Complex64>::identity(self.dim, self.dim)).norm();
        if check > 1e-6 {
            return Err(QuantumError::SingularBinomial {
                n_order: self.n_order,
            });
        }
        Ok(inv)
    }

    /// Evaluate one invertible word; the Weyl monomial carries its ordering
    /// phase q^{−Σ_{i<j} ε_ij a_i a_j}.
    pub fn word_matrix(&self, w: &Word, e: &ExMat) -> Result<CMat, QuantumError> {
        let mut acc = DMatrix::identity(self.dim, self.dim);
        for b in w.binoms() {
            let lin = DMatrix::identity(self.dim, self.dim)
                + &self.gens[b.k] * self.omega_pow(b.m);
            let lin = if b.s < 0 { self.invert(&lin)? } else { lin };
            acc = acc * lin;
        }
        let a = w.mono().exps();
        let mut cross = 0i64;
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                cross += e.get(i, j) * a[i] * a[j];
            }
        }
        let scalar = self.coeff_value(w.mono().coeff())? * self.omega_pow(-cross);
        acc = acc * scalar;
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                acc = acc * self.gen_power(i, ai);
            }
        }
        Ok(acc)
    }

    fn shared_matrix(
        &self,
        t: &Arc<FactorTree>,
        e: &ExMat,
        memo: &mut HashMap<usize, CMat>,
    ) -> Result<CMat, QuantumError> {
        let key = Arc::as_ptr(t) as usize;
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let value = self.tree_matrix(t, e, memo)?;
        memo.insert(key, value.clone());
        Ok(value)
    }

    fn tree_matrix(
        &self,
        t: &FactorTree,
        e: &ExMat,
        memo: &mut HashMap<usize, CMat>,
    ) -> Result<CMat, QuantumError> {
        let ident = DMatrix::<Complex64>::identity(self.dim, self.dim);
        let mut acc = &ident * self.coeff_value(&t.scalar)?;
        for (f, pow) in &t.factors {
            let base = match f {
                Factor::Word(w) => self.word_matrix(w, e)?,
                Factor::Binom { m, arg } => {
                    &ident + self.shared_matrix(arg, e, memo)? * self.omega_pow(*m)
                }
                Factor::Group(arg) => self.shared_matrix(arg, e, memo)?,
            };
            let base = if *pow < 0 { self.invert(&base)? } else { base };
            for _ in 0..pow.unsigned_abs() {
                acc = acc * &base;
            }
        }
        Ok(acc)
    }

    /// Matrices of all composite generator images.
    pub fn eval_composite(&self, m: &CompositeMap) -> Result<Vec<CMat>, QuantumError> {
        let ctx = m.val_ctx();
        if ctx.rank() != self.rank || ctx.slot() != QSlot::Plain || ctx.scale() != 1 {
            return Err(QuantumError::ContextMismatch);
        }
        let e = ctx.epsilon();
        let mut memo = HashMap::new();
        m.images()
            .iter()
            .map(|t| self.shared_matrix(t, e, &mut memo))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub n_requested: usize,
    pub n_used: usize,
    pub retried: Vec<usize>,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub tol: f64,
    pub checks: Vec<RelationCheck>,
    pub max_deviation: f64,
    pub pass: bool,
}

fn next_order(n: usize) -> usize {
    if n % 2 == 0 {
        n + 1
    } else {
        n + 2
    }
}

fn try_order(
    e: &ExMat,
    composite: &CompositeMap,
    n_order: usize,
) -> Result<f64, QuantumError> {
    let model = build_matrix_model(e, n_order)?;
    let images = model.eval_composite(composite)?;
    let mut dev = 0.0f64;
    for (i, img) in images.iter().enumerate() {
        let want = &model.gens[i];
        dev = dev.max((img - want).norm() / want.norm());
    }
    Ok(dev)
}

/// Evaluate the composite map of a move path in matrix models of the given
/// orders and compare every generator image against the generator itself.
/// An order whose model hits a singular binomial or a residual failure is
/// retried at the next larger odd order, a few times, and the substitutions
/// are recorded.
pub fn verify_relation_numeric(
    e: &ExMat,
    moves: &[Move],
    n_list: &[usize],
    tol: f64,
) -> Result<NumericReport, QuantumError> {
    let seed = Seed::with_default_labels(e.clone());
    let composite = quantum_pullback_along_path(&seed, moves)?;
    if composite.gen_exmat() != e {
        return Err(QuantumError::RelationNotClosed);
    }
    let checks = n_list
        .par_iter()
        .map(|&n_requested| {
            let mut retried = Vec::new();
            let mut cur = n_requested;
            loop {
                match try_order(e, &composite, cur) {
                    Ok(deviation) => {
                        return Ok(RelationCheck {
                            n_requested,
                            n_used: cur,
                            retried,
                            deviation,
                        })
                    }
                    Err(
                        err @ (QuantumError::SingularBinomial { .. }
                        | QuantumError::ModelResidual { .. }),
                    ) => {
                        retried.push(cur);
                        if retried.len() >= 4 {
                            return Err(err);
                        }
                        cur = next_order(cur);
                    }
                    Err(other) => return Err(other),
                }
            }
        })
        .collect::<Result<Vec<_>, QuantumError>>()?;
    let max_deviation = checks.iter().fold(0.0f64, |m, c| m.max(c.deviation));
    Ok(NumericReport {
        tol,
        checks,
        max_deviation,
        pass: max_deviation <= tol,
    })
}
