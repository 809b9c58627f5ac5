use crate::coeff::QCoeff;
use crate::error::QuantumError;
use cluster_core::ExMat;
use gencomplex::Lambda;
use num::BigRational;
use std::fmt;

/// Which formal symbol carries a word's phase exponents: the quantum
/// parameter itself or the independent starred copy of the Λ = 0 doubling.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QSlot {
    Plain,
    Starred,
}

/// Ambient data for a quantum torus element: the exchange pairing, the
/// block sign (the (−) half of the doubling inverts the quantum parameter),
/// and the symbol slot that phases are written to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgCtx {
    epsilon: ExMat,
    scale: i8,
    slot: QSlot,
}

impl AlgCtx {
    /// The undoubled torus over ε.
    pub fn plain(epsilon: ExMat) -> Self {
        AlgCtx {
            epsilon,
            scale: 1,
            slot: QSlot::Plain,
        }
    }

    /// One block of the doubled torus; `block` is +1 or −1.
    pub fn block(epsilon: ExMat, block: i8) -> Result<Self, QuantumError> {
        if block != 1 && block != -1 {
            return Err(QuantumError::ContextMismatch);
        }
        Ok(AlgCtx {
            epsilon,
            scale: block,
            slot: QSlot::Plain,
        })
    }

    /// Rank-2n pairing for both blocks at once: the (−) half carries −ε and
    /// the two halves pair to zero, so cross-block products commute.
    pub fn doubled(e: &ExMat) -> Self {
        let n = e.rank();
        let mut rows = vec![vec![0i64; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = e.get(i, j);
                rows[n + i][n + j] = -e.get(i, j);
            }
        }
        AlgCtx::plain(ExMat::new(rows).expect("block-diagonal skew matrix"))
    }

    pub fn epsilon(&self) -> &ExMat {
        &self.epsilon
    }

    pub fn rank(&self) -> usize {
        self.epsilon.rank()
    }

    pub fn scale(&self) -> i8 {
        self.scale
    }

    pub fn slot(&self) -> QSlot {
        self.slot
    }

    /// ⟨a,b⟩ = Σ ε_ij a_i b_j.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += self.epsilon.get(i, j) * a[i] * b[j];
            }
        }
        acc
    }

    /// ⟨a, e_k⟩ = Σ ε_ik a_i.
    fn pair_gen(&self, a: &[i64], k: usize) -> i64 {
        (0..self.rank()).map(|i| self.epsilon.get(i, k) * a[i]).sum()
    }

    /// q^e written into this context's symbol slot.
    fn phase(&self, e: i64) -> QCoeff {
        match self.slot {
            QSlot::Plain => QCoeff::q_pow(e),
            QSlot::Starred => QCoeff::qstar_pow(e),
        }
    }

    /// Connected components of the graph with an edge wherever ε_ij ≠ 0;
    /// generators in different components commute with everything in the
    /// other component.
    fn component_ids(&self) -> Vec<usize> {
        let n = self.rank();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0usize;
        for start in 0..n {
            if ids[start] != usize::MAX {
                continue;
            }
            ids[start] = next;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if ids[j] == usize::MAX && self.epsilon.get(i, j) != 0 {
                        ids[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        ids
    }
}

/// One binomial factor (1 + q^m X_k)^s with s ∈ {+1, −1}; for a starred
/// context the coefficient is read as q*^m.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Binom {
    pub k: usize,
    pub m: i64,
    pub s: i8,
}

/// Symmetrically ordered monomial: X^a · X^b = q^{scale·⟨a,b⟩} X^{a+b}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylMonomial {
    pub(crate) exps: Vec<i64>,
    pub(crate) coeff: QCoeff,
}

impl WeylMonomial {
    pub fn new(exps: Vec<i64>, coeff: QCoeff) -> Self {
        WeylMonomial { exps, coeff }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn coeff(&self) -> &QCoeff {
        &self.coeff
    }
}

/// A word: ordered binomial factors followed by one Weyl monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    pub(crate) binoms: Vec<Binom>,
    pub(crate) mono: WeylMonomial,
}

impl Word {
    pub(crate) fn one(n: usize) -> Self {
        Word {
            binoms: Vec::new(),
            mono: WeylMonomial::new(vec![0; n], QCoeff::one()),
        }
    }

    pub(crate) fn monomial(exps: Vec<i64>, coeff: QCoeff) -> Self {
        Word {
            binoms: Vec::new(),
            mono: WeylMonomial::new(exps, coeff),
        }
    }

    pub(crate) fn generator(n: usize, i: usize) -> Self {
        let mut exps = vec![0i64; n];
        exps[i] = 1;
        Word::monomial(exps, QCoeff::one())
    }

    pub fn binoms(&self) -> &[Binom] {
        &self.binoms
    }

    pub fn mono(&self) -> &WeylMonomial {
        &self.mono
    }

    fn is_scalar_one(&self) -> bool {
        self.binoms.is_empty()
            && self.mono.coeff.is_one()
            && self.mono.exps.iter().all(|&e| e == 0)
    }

    /// Binomials over generators in different connected components of the
    /// exchange graph commute exactly, so a stable sort by component id is
    /// an identity on the product; within a component the order is kept.
    /// Afterwards drop adjacent mutually inverse binomial pairs until
    /// stable.
    fn normalize(&mut self, ctx: &AlgCtx) {
        let comp = ctx.component_ids();
        self.binoms.sort_by_key(|b| comp[b.k]);
        let mut i = 0;
        while i + 1 < self.binoms.len() {
            let a = self.binoms[i];
            let b = self.binoms[i + 1];
            if a.k == b.k && a.m == b.m && a.s == -b.s {
                self.binoms.drain(i..i + 2);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
    }
}

/// x · y in the given context: y's binomials slide left past x's monomial,
/// shifting their coefficient exponent, and the monomials merge with the
/// Weyl phase.
pub(crate) fn word_mul(ctx: &AlgCtx, x: &Word, y: &Word) -> Word {
    let scale = ctx.scale as i64;
    let a = &x.mono.exps;
    let mut binoms = x.binoms.clone();
    for b in &y.binoms {
        binoms.push(Binom {
            k: b.k,
            m: b.m + 2 * scale * ctx.pair_gen(a, b.k),
            s: b.s,
        });
    }
    let phase = ctx.phase(scale * ctx.pairing(a, &y.mono.exps));
    let coeff = x.mono.coeff.mul(&y.mono.coeff).mul(&phase);
    let exps = a
        .iter()
        .zip(&y.mono.exps)
        .map(|(u, v)| u + v)
        .collect();
    let mut w = Word {
        binoms,
        mono: WeylMonomial::new(exps, coeff),
    };
    w.normalize(ctx);
    w
}

/// Inverse of a word: the monomial inverts (its coefficient must be a unit)
/// and the binomials reverse with flipped sign and shifted exponents.
pub(crate) fn word_inv(ctx: &AlgCtx, w: &Word) -> Result<Word, QuantumError> {
    let scale = ctx.scale as i64;
    let a = &w.mono.exps;
    let coeff = w.mono.coeff.inv()?;
    let exps: Vec<i64> = a.iter().map(|&e| -e).collect();
    let binoms = w
        .binoms
        .iter()
        .rev()
        .map(|b| Binom {
            k: b.k,
            m: b.m - 2 * scale * ctx.pair_gen(a, b.k),
            s: -b.s,
        })
        .collect();
    let mut out = Word {
        binoms,
        mono: WeylMonomial::new(exps, coeff),
    };
    out.normalize(ctx);
    Ok(out)
}

/// An element of the quantum torus: a sum of words over a shared context,
/// held in a canonical sorted-and-merged form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QElem {
    ctx: AlgCtx,
    words: Vec<Word>,
}

impl QElem {
    fn normalized(ctx: AlgCtx, mut words: Vec<Word>) -> Self {
        for w in &mut words {
            w.normalize(&ctx);
        }
        words.sort_by(|x, y| {
            x.binoms
                .cmp(&y.binoms)
                .then_with(|| x.mono.exps.cmp(&y.mono.exps))
        });
        let mut merged: Vec<Word> = Vec::with_capacity(words.len());
        for w in words {
            if let Some(last) = merged.last_mut() {
                if last.binoms == w.binoms && last.mono.exps == w.mono.exps {
                    last.mono.coeff = last.mono.coeff.add(&w.mono.coeff);
                    continue;
                }
            }
            merged.push(w);
        }
        merged.retain(|w| !w.mono.coeff.is_zero());
        QElem { ctx, words: merged }
    }

    pub fn zero(ctx: AlgCtx) -> Self {
        QElem {
            ctx,
            words: Vec::new(),
        }
    }

    pub fn one(ctx: AlgCtx) -> Self {
        let n = ctx.rank();
        QElem::normalized(ctx, vec![Word::one(n)])
    }

    pub fn generator(ctx: AlgCtx, i: usize) -> Result<Self, QuantumError> {
        let n = ctx.rank();
        if i >= n {
            return Err(QuantumError::IndexOutOfRange { index: i, rank: n });
        }
        Ok(QElem::normalized(ctx, vec![Word::generator(n, i)]))
    }

    /// c·q^phase·X^a as a single word.
    pub fn monomial(ctx: AlgCtx, exps: Vec<i64>, coeff: QCoeff) -> Result<Self, QuantumError> {
        if exps.len() != ctx.rank() {
            return Err(QuantumError::IndexOutOfRange {
                index: exps.len(),
                rank: ctx.rank(),
            });
        }
        Ok(QElem::normalized(ctx, vec![Word::monomial(exps, coeff)]))
    }

    /// The single binomial factor (1 + q^m X_k)^s.
    pub fn binomial(ctx: AlgCtx, k: usize, m: i64, s: i8) -> Result<Self, QuantumError> {
        let n = ctx.rank();
        if k >= n {
            return Err(QuantumError::IndexOutOfRange { index: k, rank: n });
        }
        let word = Word {
            binoms: vec![Binom { k, m, s }],
            mono: WeylMonomial::new(vec![0; n], QCoeff::one()),
        };
        Ok(QElem::normalized(ctx, vec![word]))
    }

    pub(crate) fn from_word(ctx: AlgCtx, w: Word) -> Self {
        QElem::normalized(ctx, vec![w])
    }

    pub fn ctx(&self) -> &AlgCtx {
        &self.ctx
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_scalar_one()
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuantumError> {
        if self.ctx != other.ctx {
            return Err(QuantumError::ContextMismatch);
        }
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        Ok(QElem::normalized(self.ctx.clone(), words))
    }

    pub fn neg(&self) -> Self {
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.mono.coeff = w.mono.coeff.neg();
                w
            })
            .collect();
        QElem {
            ctx: self.ctx.clone(),
            words,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QuantumError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QCoeff) -> Self {
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut w = w.clone();
                w.mono.coeff = w.mono.coeff.mul(c);
                w
            })
            .collect();
        QElem::normalized(self.ctx.clone(), words)
    }

    /// Inverse of a single-word element.
    pub fn inv(&self) -> Result<Self, QuantumError> {
        if self.words.len() != 1 {
            return Err(QuantumError::NonInvertible);
        }
        let w = word_inv(&self.ctx, &self.words[0])?;
        Ok(QElem::from_word(self.ctx.clone(), w))
    }

    /// Embed a block element into the doubled context; `block` −1 lands in
    /// the second half of the extended exponent vector.
    pub fn embed_block(&self, block: i8) -> Result<Self, QuantumError> {
        if self.ctx.slot != QSlot::Plain || self.ctx.scale != block {
            return Err(QuantumError::ContextMismatch);
        }
        let n = self.ctx.rank();
        let offset = if block == 1 { 0 } else { n };
        let ctx = AlgCtx::doubled(&self.ctx.epsilon);
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut exps = vec![0i64; 2 * n];
                for (i, &e) in w.mono.exps.iter().enumerate() {
                    exps[offset + i] = e;
                }
                Word {
                    binoms: w
                        .binoms
                        .iter()
                        .map(|b| Binom {
                            k: b.k + offset,
                            m: b.m,
                            s: b.s,
                        })
                        .collect(),
                    mono: WeylMonomial::new(exps, w.mono.coeff.clone()),
                }
            })
            .collect();
        Ok(QElem::normalized(ctx, words))
    }

    /// The conjugate-linear involution of the Λ-doubling. It preserves
    /// products: Λ = −1 fixes everything, Λ = +1 swaps the blocks and
    /// inverts the quantum parameter, Λ = 0 moves phases to the starred
    /// symbol.
    pub fn star(&self, lam: Lambda) -> Result<Self, QuantumError> {
        match lam {
            Lambda::MinusOne => {
                if self.ctx.slot != QSlot::Plain || self.uses_star_anywhere() {
                    return Err(QuantumError::StarredSlotUnavailable);
                }
                Ok(self.clone())
            }
            Lambda::PlusOne => {
                if self.ctx.slot != QSlot::Plain || self.uses_star_anywhere() {
                    return Err(QuantumError::StarredSlotUnavailable);
                }
                let ctx = AlgCtx {
                    epsilon: self.ctx.epsilon.clone(),
                    scale: -self.ctx.scale,
                    slot: QSlot::Plain,
                };
                let words = self
                    .words
                    .iter()
                    .map(|w| Word {
                        binoms: w
                            .binoms
                            .iter()
                            .map(|b| Binom {
                                k: b.k,
                                m: -b.m,
                                s: b.s,
                            })
                            .collect(),
                        mono: WeylMonomial::new(
                            w.mono.exps.clone(),
                            w.mono.coeff.subst_q_inv(),
                        ),
                    })
                    .collect();
                Ok(QElem::normalized(ctx, words))
            }
            Lambda::Zero => {
                let ctx = AlgCtx {
                    epsilon: self.ctx.epsilon.clone(),
                    scale: self.ctx.scale,
                    slot: match self.ctx.slot {
                        QSlot::Plain => QSlot::Starred,
                        QSlot::Starred => QSlot::Plain,
                    },
                };
                let words = self
                    .words
                    .iter()
                    .map(|w| Word {
                        binoms: w.binoms.clone(),
                        mono: WeylMonomial::new(
                            w.mono.exps.clone(),
                            w.mono.coeff.swap_slots(),
                        ),
                    })
                    .collect();
                Ok(QElem::normalized(ctx, words))
            }
        }
    }

    fn uses_star_anywhere(&self) -> bool {
        self.words.iter().any(|w| w.mono.coeff.uses_star())
    }
}

/// Product in the quantum torus; both operands must share a context.
pub fn q_mul(a: &QElem, b: &QElem) -> Result<QElem, QuantumError> {
    if a.ctx != b.ctx {
        return Err(QuantumError::ContextMismatch);
    }
    let mut words = Vec::with_capacity(a.words.len() * b.words.len());
    for x in &a.words {
        for y in &b.words {
            words.push(word_mul(&a.ctx, x, y));
        }
    }
    Ok(QElem::normalized(a.ctx.clone(), words))
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "0");
        }
        let star = self.ctx.slot == QSlot::Starred;
        for (t, w) in self.words.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            for b in &w.binoms {
                let sym = if star { "q*" } else { "q" };
                write!(f, "(1 + {sym}^{}·X{})^{}", b.m, b.k + 1, b.s)?;
            }
            if !w.mono.coeff.is_one() {
                write!(f, "({})", w.mono.coeff)?;
            }
            write!(f, "X^{:?}", w.mono.exps)?;
        }
        Ok(())
    }
}

/// Convenience: the exact rational n/d.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
