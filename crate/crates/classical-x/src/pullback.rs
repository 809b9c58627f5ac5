use crate::error::ClassicalError;
use crate::ratexpr::RatExpr;
use cluster_core::{Move, Perm, Seed};
use serde::Serialize;

/// Pullback of coordinate functions along a seed path: one image per
/// target generator, written in source coordinates.
///
/// Equality compares the exchange matrices at both ends and the images;
/// generator labels are cosmetic and relations like the pentagon return
/// to the original labeling only up to the closing permutation.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackMap {
    source: Seed,
    target: Seed,
    images: Vec<RatExpr>,
}

impl PartialEq for PullbackMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.exmat() == other.source.exmat()
            && self.target.exmat() == other.target.exmat()
            && self.images == other.images
    }
}

impl PullbackMap {
    pub fn identity(s: &Seed) -> Self {
        let n = s.rank();
        PullbackMap {
            source: s.clone(),
            target: s.clone(),
            images: (0..n).map(|i| RatExpr::gen(n, i)).collect(),
        }
    }

    pub fn source(&self) -> &Seed {
        &self.source
    }

    pub fn target(&self) -> &Seed {
        &self.target
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    pub fn images(&self) -> &[RatExpr] {
        &self.images
    }

    pub fn image(&self, j: usize) -> &RatExpr {
        &self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rank();
        self.source.exmat() == self.target.exmat()
            && (0..n).all(|j| self.images[j] == RatExpr::gen(n, j))
    }
}

/// Pullback of the mutation at direction k: X′_k picks up the reciprocal
/// and every other generator the binomial factor (1+X_k^{∓1})^{∓ε_ik}.
pub fn classical_mutation(s: &Seed, k: usize) -> Result<PullbackMap, ClassicalError> {
    let target = s.mutate(k)?;
    let n = s.rank();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        if i == k {
            let mut exps = vec![0i64; n];
            exps[k] = -1;
            images.push(RatExpr::monomial(n, &exps));
            continue;
        }
        let e = s.exmat().get(i, k);
        if e == 0 {
            images.push(RatExpr::gen(n, i));
            continue;
        }
        let sgn = e.signum();
        let mut exps = vec![0i64; n];
        exps[k] = -sgn;
        let binom = RatExpr::one(n).add(&RatExpr::monomial(n, &exps));
        let factor = binom.pow(-e).expect("binomial is nonzero");
        images.push(RatExpr::gen(n, i).mul(&factor));
    }
    Ok(PullbackMap {
        source: s.clone(),
        target,
        images,
    })
}

/// Pullback of the relabeling by σ: the target generator σ(i) reads off
/// the source generator i.
pub fn permutation_pullback(s: &Seed, sigma: &Perm) -> Result<PullbackMap, ClassicalError> {
    let target = s.permute(sigma)?;
    let n = s.rank();
    let inv = sigma.inverse();
    let images = (0..n).map(|j| RatExpr::gen(n, inv.apply(j))).collect();
    Ok(PullbackMap {
        source: s.clone(),
        target,
        images,
    })
}

pub fn pullback_of_move(s: &Seed, m: &Move) -> Result<PullbackMap, ClassicalError> {
    match m {
        Move::Mutate(k) => classical_mutation(s, *k),
        Move::Permute(sigma) => permutation_pullback(s, sigma),
    }
}

/// Pullback along the path that applies f's underlying map first, then g's:
/// every source symbol in g's images is replaced by its f-image.
pub fn compose_pullbacks(f: &PullbackMap, g: &PullbackMap) -> Result<PullbackMap, ClassicalError> {
    if f.target.rank() != g.source.rank() || f.target.exmat() != g.source.exmat() {
        return Err(ClassicalError::SeedMismatch);
    }
    let images = g
        .images
        .iter()
        .map(|img| img.substitute(&f.images))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PullbackMap {
        source: f.source.clone(),
        target: g.target.clone(),
        images,
    })
}

pub fn pullback_along_path(s: &Seed, moves: &[Move]) -> Result<PullbackMap, ClassicalError> {
    let mut acc = PullbackMap::identity(s);
    for m in moves {
        let step = pullback_of_move(&acc.target, m)?;
        acc = compose_pullbacks(&acc, &step)?;
    }
    Ok(acc)
}
