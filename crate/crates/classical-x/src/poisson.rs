use crate::error::ClassicalError;
use crate::pullback::classical_mutation;
use crate::ratexpr::RatExpr;
use cluster_core::{ExMat, Seed};
use serde::Serialize;

/// Log-canonical bracket ℓ·Σ_{ij} ε_ij Z_i Z_j (∂f/∂Z_i)(∂g/∂Z_j).
///
/// The result carries the central ℓ marker; both inputs must be ℓ-free.
pub fn poisson_bracket(f: &RatExpr, g: &RatExpr, e: &ExMat) -> RatExpr {
    let n = e.rank();
    assert_eq!(f.nvars(), n, "bracket context rank mismatch");
    assert_eq!(g.nvars(), n, "bracket context rank mismatch");
    assert!(
        !f.has_ell() && !g.has_ell(),
        "bracket arguments must be ell-free"
    );
    let df: Vec<Option<RatExpr>> = (0..n)
        .map(|i| ((0..n).any(|j| e.get(i, j) != 0)).then(|| f.partial_derivative(i)))
        .collect();
    let dg: Vec<Option<RatExpr>> = (0..n)
        .map(|j| ((0..n).any(|i| e.get(i, j) != 0)).then(|| g.partial_derivative(j)))
        .collect();
    let mut acc = RatExpr::zero(n);
    for i in 0..n {
        for j in 0..n {
            let eij = e.get(i, j);
            if eij == 0 {
                continue;
            }
            let (Some(di), Some(dj)) = (&df[i], &dg[j]) else {
                continue;
            };
            if di.is_zero() || dj.is_zero() {
                continue;
            }
            let term = RatExpr::from_int(n, eij)
                .mul(&RatExpr::gen(n, i))
                .mul(&RatExpr::gen(n, j))
                .mul(di)
                .mul(dj);
            acc = acc.add(&term);
        }
    }
    acc.with_ell(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub k: usize,
    pub pairs: Vec<PairCheck>,
    pub all_pass: bool,
}

/// Exact check that mutation at k intertwines the brackets: for every
/// pair, {μ*Z′_i, μ*Z′_j} computed with the source ε must equal
/// ℓ·ε′_ij·(μ*Z′_i)(μ*Z′_j) with the mutated ε′.
pub fn check_poisson_compat(s: &Seed, k: usize) -> Result<CompatReport, ClassicalError> {
    let map = classical_mutation(s, k)?;
    let eps_new = map.target().exmat().clone();
    let n = s.rank();
    let mut pairs = Vec::new();
    let mut all_pass = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = poisson_bracket(map.image(i), map.image(j), s.exmat());
            let rhs = RatExpr::from_int(n, eps_new.get(i, j))
                .mul(map.image(i))
                .mul(map.image(j))
                .with_ell(true);
            let pass = lhs == rhs;
            all_pass &= pass;
            pairs.push(PairCheck { i, j, pass });
        }
    }
    Ok(CompatReport { k, pairs, all_pass })
}
