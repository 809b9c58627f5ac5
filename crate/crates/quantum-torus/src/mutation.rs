use crate::algebra::{AlgCtx, Binom, QElem, QSlot, WeylMonomial, Word};
use crate::coeff::QCoeff;
use crate::error::QuantumError;
use classical_x::RatExpr;
use cluster_core::{mutate_exmat, permute_exmat, ExMat, Move, Seed};
use gencomplex::Lambda;
use std::collections::HashMap;
use std::sync::Arc;

fn check_index(ctx: &AlgCtx, k: usize) -> Result<(), QuantumError> {
    if k >= ctx.rank() {
        return Err(QuantumError::IndexOutOfRange {
            index: k,
            rank: ctx.rank(),
        });
    }
    Ok(())
}

/// The composite mutation image of each primed generator as one invertible
/// word: X′_k ↦ X_k^{−1} and, for i ≠ k with η = ε_ik,
/// X′_i ↦ ∏_{r=1}^{|η|} (1 + q^{scale(2η − sgn(η)(2r−1))} X_k)^{−sgn(η)} · X^{e_i + [η]_+ e_k}.
fn step_words(ctx: &AlgCtx, k: usize) -> Result<Vec<Word>, QuantumError> {
    check_index(ctx, k)?;
    let n = ctx.rank();
    let scale = ctx.scale() as i64;
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        if i == k {
            let mut exps = vec![0i64; n];
            exps[k] = -1;
            images.push(Word::monomial(exps, QCoeff::one()));
            continue;
        }
        let eta = ctx.epsilon().get(i, k);
        let sgn = eta.signum();
        let binoms = (1..=eta.abs())
            .map(|r| Binom {
                k,
                m: scale * (2 * eta - sgn * (2 * r - 1)),
                s: -(sgn as i8),
            })
            .collect();
        let mut exps = vec![0i64; n];
        exps[i] = 1;
        exps[k] = eta.max(0);
        images.push(Word {
            binoms,
            mono: WeylMonomial::new(exps, QCoeff::one()),
        });
    }
    Ok(images)
}

/// Monomial part of the quantum mutation at k: X′_k ↦ X_k^{−1} and
/// X′_i ↦ q^{−ε_ik[ε_ik]_+} X_i X_k^{[ε_ik]_+}, a single Weyl monomial
/// X^{e_i + [ε_ik]_+ e_k} with coefficient one.
pub fn mu_prime(s: &Seed, k: usize) -> Result<Vec<QElem>, QuantumError> {
    let ctx = AlgCtx::plain(s.exmat().clone());
    check_index(&ctx, k)?;
    let n = ctx.rank();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let mut exps = vec![0i64; n];
        if i == k {
            exps[k] = -1;
        } else {
            exps[i] = 1;
            exps[k] = s.exmat().get(i, k).max(0);
        }
        images.push(QElem::monomial(ctx.clone(), exps, QCoeff::one())?);
    }
    Ok(images)
}

/// Automorphism part of the quantum mutation at k:
/// X_i ↦ X_i ∏_{r=1}^{|ε_ik|} (1 + q^{−sgn(ε_ik)(2r−1)} X_k)^{−sgn(ε_ik)}.
pub fn mu_sharp(s: &Seed, k: usize) -> Result<Vec<QElem>, QuantumError> {
    let ctx = AlgCtx::plain(s.exmat().clone());
    check_index(&ctx, k)?;
    let n = ctx.rank();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let eta = s.exmat().get(i, k);
        let sgn = eta.signum();
        let mut img = QElem::generator(ctx.clone(), i)?;
        for r in 1..=eta.abs() {
            let b = QElem::binomial(ctx.clone(), k, -sgn * (2 * r - 1), -(sgn as i8))?;
            img = crate::algebra::q_mul(&img, &b)?;
        }
        images.push(img);
    }
    Ok(images)
}

/// Full quantum mutation images μ♯ ∘ μ′ in one of the doubled blocks; the
/// (−) block carries every phase exponent with the opposite sign. The
/// images are the same Laurent data for every Λ; the parameter names the
/// intended coefficient ring.
pub fn mu_quantum_lambda(
    s: &Seed,
    k: usize,
    lam: Lambda,
    eps_block: i8,
) -> Result<Vec<QElem>, QuantumError> {
    debug_assert!(matches!(
        lam,
        Lambda::MinusOne | Lambda::Zero | Lambda::PlusOne
    ));
    let ctx = AlgCtx::block(s.exmat().clone(), eps_block)?;
    let words = step_words(&ctx, k)?;
    Ok(words
        .into_iter()
        .map(|w| QElem::from_word(ctx.clone(), w))
        .collect())
}

/// Substitute q = 1: Weyl monomials become commutative monomials and
/// binomial factors become (1 + Z_k)^{±1}.
pub fn classical_limit(x: &QElem) -> Result<RatExpr, QuantumError> {
    let n = x.ctx().rank();
    let mut acc = RatExpr::zero(n);
    for w in x.words() {
        acc = acc.add(&word_classical(w, n)?);
    }
    Ok(acc)
}

fn word_classical(w: &Word, n: usize) -> Result<RatExpr, QuantumError> {
    let mut r = RatExpr::constant(n, w.mono().coeff().eval_q1());
    for b in w.binoms() {
        let mut exps = vec![0i64; n];
        exps[b.k] = 1;
        let lin = RatExpr::one(n).add(&RatExpr::monomial(n, &exps));
        r = r.mul(&lin.pow(b.s as i64)?);
    }
    Ok(r.mul(&RatExpr::monomial(n, w.mono().exps())))
}

/// One mutation or relabeling step: the images of the new seed's
/// generators, each a single invertible word over the old seed's algebra.
#[derive(Clone, Debug)]
pub struct QWordMap {
    gen_exmat: ExMat,
    val_ctx: AlgCtx,
    images: Vec<Word>,
}

impl QWordMap {
    pub fn gen_exmat(&self) -> &ExMat {
        &self.gen_exmat
    }

    pub fn val_ctx(&self) -> &AlgCtx {
        &self.val_ctx
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_elems(&self) -> Vec<QElem> {
        self.images
            .iter()
            .map(|w| QElem::from_word(self.val_ctx.clone(), w.clone()))
            .collect()
    }
}

/// Quantum mutation at k as a single step map.
pub fn mu_quantum(s: &Seed, k: usize) -> Result<QWordMap, QuantumError> {
    let ctx = AlgCtx::plain(s.exmat().clone());
    let images = step_words(&ctx, k)?;
    Ok(QWordMap {
        gen_exmat: mutate_exmat(s.exmat(), k)?,
        val_ctx: ctx,
        images,
    })
}

/// The step map of a single move over the exchange matrix e.
pub fn quantum_step(e: &ExMat, mv: &Move) -> Result<QWordMap, QuantumError> {
    let ctx = AlgCtx::plain(e.clone());
    match mv {
        Move::Mutate(k) => {
            let images = step_words(&ctx, *k)?;
            Ok(QWordMap {
                gen_exmat: mutate_exmat(e, *k)?,
                val_ctx: ctx,
                images,
            })
        }
        Move::Permute(sigma) => {
            let n = e.rank();
            let inv = sigma.inverse();
            let images = (0..n).map(|j| Word::generator(n, inv.apply(j))).collect();
            Ok(QWordMap {
                gen_exmat: permute_exmat(e, sigma)?,
                val_ctx: ctx,
                images,
            })
        }
    }
}

/// Ordered product of invertible factors; composite mutation images stay
/// factored instead of being cleared into skew fractions. Shared subtrees
/// are reference-counted so repeated images evaluate once.
#[derive(Clone, Debug)]
pub struct FactorTree {
    pub(crate) scalar: QCoeff,
    pub(crate) factors: Vec<(Factor, i64)>,
}

#[derive(Clone, Debug)]
pub(crate) enum Factor {
    Word(Word),
    Binom { m: i64, arg: Arc<FactorTree> },
    Group(Arc<FactorTree>),
}

impl FactorTree {
    fn from_word(w: Word) -> Self {
        FactorTree {
            scalar: QCoeff::one(),
            factors: vec![(Factor::Word(w), 1)],
        }
    }
}

/// Composite of step maps along a path: for each generator of the final
/// seed, its image over the starting algebra as a factored product.
#[derive(Clone, Debug)]
pub struct CompositeMap {
    gen_exmat: ExMat,
    val_ctx: AlgCtx,
    images: Vec<Arc<FactorTree>>,
}

impl CompositeMap {
    pub fn gen_exmat(&self) -> &ExMat {
        &self.gen_exmat
    }

    pub fn val_ctx(&self) -> &AlgCtx {
        &self.val_ctx
    }

    pub(crate) fn images(&self) -> &[Arc<FactorTree>] {
        &self.images
    }
}

/// The identity map over e.
pub fn identity_composite(e: &ExMat) -> CompositeMap {
    let n = e.rank();
    let images = (0..n)
        .map(|i| Arc::new(FactorTree::from_word(Word::generator(n, i))))
        .collect();
    CompositeMap {
        gen_exmat: e.clone(),
        val_ctx: AlgCtx::plain(e.clone()),
        images,
    }
}

/// Replace each generator in the word by its image under phi; `gen_ctx` is
/// the algebra the word is written in and supplies the Weyl constants of
/// the ordered expansion X^a = q^{−scale Σ_{i<j} ε_ij a_i a_j} ∏ X_i^{a_i}.
fn substitute_word(phi: &CompositeMap, gen_ctx: &AlgCtx, w: &Word) -> FactorTree {
    let n = gen_ctx.rank();
    let mut factors = Vec::new();
    for b in w.binoms() {
        factors.push((
            Factor::Binom {
                m: b.m,
                arg: phi.images[b.k].clone(),
            },
            b.s as i64,
        ));
    }
    let a = w.mono().exps();
    let mut cross = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            cross += gen_ctx.epsilon().get(i, j) * a[i] * a[j];
        }
    }
    let phase = match gen_ctx.slot() {
        QSlot::Plain => QCoeff::q_pow(-(gen_ctx.scale() as i64) * cross),
        QSlot::Starred => QCoeff::qstar_pow(-(gen_ctx.scale() as i64) * cross),
    };
    let scalar = w.mono().coeff().mul(&phase);
    for (i, &ai) in a.iter().enumerate() {
        if ai != 0 {
            factors.push((Factor::Group(phi.images[i].clone()), ai));
        }
    }
    FactorTree { scalar, factors }
}

/// Composite of f followed by the step g: g's images, rewritten through f.
pub fn compose_quantum(f: &CompositeMap, g: &QWordMap) -> Result<CompositeMap, QuantumError> {
    if g.val_ctx.epsilon() != &f.gen_exmat || g.val_ctx.slot() != f.val_ctx.slot() {
        return Err(QuantumError::ContextMismatch);
    }
    let images = g
        .images
        .iter()
        .map(|w| Arc::new(substitute_word(f, &g.val_ctx, w)))
        .collect();
    Ok(CompositeMap {
        gen_exmat: g.gen_exmat.clone(),
        val_ctx: f.val_ctx.clone(),
        images,
    })
}

/// Composite quantum mutation map along a move path from s.
pub fn quantum_pullback_along_path(
    s: &Seed,
    moves: &[Move],
) -> Result<CompositeMap, QuantumError> {
    let mut acc = identity_composite(s.exmat());
    for mv in moves {
        let step = quantum_step(&acc.gen_exmat, mv)?;
        acc = compose_quantum(&acc, &step)?;
    }
    Ok(acc)
}

/// Classical limits of a composite's generator images.
pub fn composite_classical_images(m: &CompositeMap) -> Result<Vec<RatExpr>, QuantumError> {
    let n = m.val_ctx.rank();
    let mut memo = HashMap::new();
    m.images
        .iter()
        .map(|t| tree_classical(t, n, &mut memo))
        .collect()
}

fn shared_classical(
    t: &Arc<FactorTree>,
    n: usize,
    memo: &mut HashMap<usize, RatExpr>,
) -> Result<RatExpr, QuantumError> {
    let key = Arc::as_ptr(t) as usize;
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let value = tree_classical(t, n, memo)?;
    memo.insert(key, value.clone());
    Ok(value)
}

fn tree_classical(
    t: &FactorTree,
    n: usize,
    memo: &mut HashMap<usize, RatExpr>,
) -> Result<RatExpr, QuantumError> {
    let mut acc = RatExpr::constant(n, t.scalar.eval_q1());
    for (f, e) in &t.factors {
        let base = match f {
            Factor::Word(w) => word_classical(w, n)?,
            Factor::Binom { arg, .. } => RatExpr::one(n).add(&shared_classical(arg, n, memo)?),
            Factor::Group(arg) => shared_classical(arg, n, memo)?,
        };
        acc = acc.mul(&base.pow(*e)?);
    }
    Ok(acc)
}
