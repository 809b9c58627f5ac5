use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::BTreeMap;

/// Multivariate polynomial over ℚ with non-negative integer exponents.
///
/// Terms are keyed by exponent vectors of fixed length `nvars`, kept free
/// of zero coefficients, so map equality is polynomial equality and the
/// lexicographically greatest key is a well-defined leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, BigRational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        match self.as_monomial() {
            Some((exps, c)) => exps.iter().all(|&e| e == 0) && c.is_one(),
            None => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// The single term of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<(&Vec<u32>, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Term with the lexicographically greatest exponent vector.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn partial_derivative(&self, v: usize) -> Self {
        assert!(v < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[v] -= 1;
            out.add_term(exps, c * BigRational::from_integer(BigInt::from(e[v])));
        }
        out
    }

    fn vars_present(&self) -> Vec<usize> {
        let mut present = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    present[i] = true;
                }
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i))
            .collect()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficient list by degree in `v`; each coefficient has `v`-exponent 0.
    fn to_univar(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut coeffs = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut exps = e.clone();
            exps[v] = 0;
            coeffs[k].add_term(exps, c.clone());
        }
        coeffs
    }

    fn from_univar(coeffs: &[MPoly], v: usize, nvars: usize) -> MPoly {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, q) in &c.terms {
                let mut exps = e.clone();
                exps[v] += k as u32;
                out.add_term(exps, q.clone());
            }
        }
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn divexact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if d.is_constant() {
            let c = d.terms.values().next().unwrap();
            return Some(self.mul_scalar(&c.recip()));
        }
        let v = *d.vars_present().last().unwrap();
        let num = self.to_univar(v);
        let den = d.to_univar(v);
        let quot = div_univar(&num, &den, self.nvars)?;
        Some(Self::from_univar(&quot, v, self.nvars))
    }

    /// Scale to coprime integer coefficients with positive leading coefficient.
    pub fn normalized_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scale = BigRational::new(den_lcm, num_gcd);
        if (self.leading().unwrap().1 * &scale).is_negative() {
            scale = -scale;
        }
        self.mul_scalar(&scale)
    }
}

impl MPoly {
    /// Per-variable minimum exponent across all terms.
    fn min_exponents(&self) -> Vec<u32> {
        let mut mins = vec![u32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                mins[i] = mins[i].min(x);
            }
        }
        mins
    }

    /// Divide by the monomial X^m; every term must have exponents ≥ m.
    fn shift_down(&self, m: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let exps: Vec<u32> = e.iter().zip(m).map(|(a, b)| a - b).collect();
            out.terms.insert(exps, c.clone());
        }
        out
    }
}

const MOD_P: u64 = 0xFFFF_FFFF_FFFF_FFC5;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64) -> u64 {
    powmod(a, MOD_P - 2)
}

fn rational_mod(c: &BigRational) -> Option<u64> {
    let p = BigInt::from(MOD_P);
    let n = ((c.numer() % &p) + &p) % &p;
    let d = ((c.denom() % &p) + &p) % &p;
    let n64 = u64::try_from(n).ok()?;
    let d64 = u64::try_from(d).ok()?;
    if d64 == 0 {
        return None;
    }
    Some(mulmod(n64, invmod(d64)))
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % MOD_P as u128) as u64
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (MOD_P - b)
    }
}

fn up_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn up_eval(p: &[u64], t: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = addmod(mulmod(acc, t), c);
    }
    acc
}

fn up_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y));
        }
    }
    up_trim(&mut out);
    out
}

fn up_divrem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    up_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![0u64; rem.len() - b.len() + 1];
    let lead_inv = invmod(*b.last().unwrap());
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = mulmod(*rem.last().unwrap(), lead_inv);
        quo[shift] = factor;
        for (j, &bc) in b.iter().enumerate() {
            rem[shift + j] = submod(rem[shift + j], mulmod(factor, bc));
        }
        up_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    up_trim(&mut quo);
    (quo, rem)
}

fn up_div_exact(a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let (q, r) = up_divrem(a, b);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Monic gcd of univariate polynomials over the prime field; `[1]` when
/// coprime, empty only when both inputs are zero.
fn up_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    up_trim(&mut a);
    up_trim(&mut b);
    while !b.is_empty() {
        let (_, r) = up_divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = invmod(lead);
            for c in &mut a {
                *c = mulmod(*c, inv);
            }
        }
    }
    a
}

/// Lagrange interpolation through distinct nodes over the prime field.
fn up_interp(ts: &[u64], vs: &[u64]) -> Vec<u64> {
    let mut master = vec![1u64];
    for &t in ts {
        master = up_mul(&master, &[submod(0, t), 1]);
    }
    let mut acc = Vec::new();
    for (&t, &v) in ts.iter().zip(vs) {
        let (q, r) = up_divrem(&master, &[submod(0, t), 1]);
        debug_assert!(r.is_empty());
        let denom = up_eval(&q, t);
        let scale = mulmod(v, invmod(denom));
        if acc.len() < q.len() {
            acc.resize(q.len(), 0);
        }
        for (j, &c) in q.iter().enumerate() {
            acc[j] = addmod(acc[j], mulmod(scale, c));
        }
    }
    up_trim(&mut acc);
    acc
}

/// Multivariate polynomial with coefficients in the prime field, mirroring
/// the exponent layout of `MPoly`.
#[derive(Clone, Debug)]
struct ModPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl ModPoly {
    fn zero(nvars: usize) -> Self {
        ModPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    fn from_mpoly(p: &MPoly) -> Option<Self> {
        let mut out = Self::zero(p.nvars);
        for (e, c) in &p.terms {
            let v = rational_mod(c)?;
            if v != 0 {
                out.terms.insert(e.clone(), v);
            }
        }
        Some(out)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    fn vars_present(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| if s { Some(i) } else { None })
            .collect()
    }

    fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Group terms by the exponent vector with slot `v` zeroed; each group
    /// becomes a univariate coefficient polynomial in variable `v`.
    fn split_by(&self, v: usize) -> BTreeMap<Vec<u32>, Vec<u64>> {
        let mut map: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let k = e[v] as usize;
            let mut rest = e.clone();
            rest[v] = 0;
            let entry = map.entry(rest).or_default();
            if entry.len() <= k {
                entry.resize(k + 1, 0);
            }
            entry[k] = c;
        }
        map
    }

    fn join(map: BTreeMap<Vec<u32>, Vec<u64>>, v: usize, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (rest, poly) in map {
            for (k, &c) in poly.iter().enumerate() {
                if c != 0 {
                    let mut e = rest.clone();
                    e[v] = k as u32;
                    out.terms.insert(e, c);
                }
            }
        }
        out
    }

    /// Scale so the lexicographically greatest term has coefficient one.
    fn monic(mut self) -> Self {
        if let Some((_, &lead)) = self.terms.iter().next_back() {
            if lead != 1 {
                let inv = invmod(lead);
                for c in self.terms.values_mut() {
                    *c = mulmod(*c, inv);
                }
            }
        }
        self
    }
}

struct PointGen {
    state: u64,
    used: std::collections::BTreeSet<u64>,
}

impl PointGen {
    fn new(seed: u64) -> Self {
        PointGen {
            state: seed,
            used: std::collections::BTreeSet::new(),
        }
    }

    fn next(&mut self) -> u64 {
        loop {
            self.state = self
                .state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let t = (self.state >> 8) % (MOD_P - 3) + 2;
            if self.used.insert(t) {
                return t;
            }
        }
    }
}

/// Gcd over the prime field by evaluation and interpolation in one variable
/// at a time. The result is monic in its lexicographically greatest term.
/// `None` means the point budget ran out, which sends the caller to the
/// exact remainder-sequence path.
fn mod_gcd(a: &ModPoly, b: &ModPoly, gen: &mut PointGen, budget: &mut u32) -> Option<ModPoly> {
    let nv = a.nvars;
    if a.is_zero() {
        return Some(b.clone().monic());
    }
    if b.is_zero() {
        return Some(a.clone().monic());
    }
    let mut vars = a.vars_present();
    for v in b.vars_present() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    if vars.is_empty() {
        let mut one = ModPoly::zero(nv);
        one.terms.insert(vec![0; nv], 1);
        return Some(one);
    }
    if vars.len() == 1 {
        let v = vars[0];
        let ua = a.split_by(v).into_values().next().unwrap();
        let ub = b.split_by(v).into_values().next().unwrap();
        let g = up_gcd(&ua, &ub);
        let mut map = BTreeMap::new();
        map.insert(vec![0; nv], g);
        return Some(ModPoly::join(map, v, nv));
    }
    let v = *vars
        .iter()
        .min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v)))
        .unwrap();
    let mut sa = a.split_by(v);
    let mut sb = b.split_by(v);
    let cont_a = sa.values().fold(Vec::new(), |acc, p| up_gcd(&acc, p));
    let cont_b = sb.values().fold(Vec::new(), |acc, p| up_gcd(&acc, p));
    for p in sa.values_mut() {
        *p = up_div_exact(p, &cont_a)?;
    }
    for p in sb.values_mut() {
        *p = up_div_exact(p, &cont_b)?;
    }
    let cont_g = up_gcd(&cont_a, &cont_b);
    let lc_a = sa.values().next_back().unwrap().clone();
    let lc_b = sb.values().next_back().unwrap().clone();
    let gamma = up_gcd(&lc_a, &lc_b);
    let dva = sa.values().map(|p| p.len() - 1).max().unwrap();
    let dvb = sb.values().map(|p| p.len() - 1).max().unwrap();
    let bound = dva.min(dvb) + (gamma.len() - 1);
    let a_prim = ModPoly::join(sa, v, nv);
    let b_prim = ModPoly::join(sb, v, nv);
    let mut images: Vec<(u64, ModPoly)> = Vec::new();
    let mut lead: Option<Vec<u32>> = None;
    let mut attempts = 0usize;
    let max_attempts = 24 + 4 * (bound + 1);
    loop {
        if attempts >= max_attempts || *budget == 0 {
            return None;
        }
        attempts += 1;
        *budget -= 1;
        let t = gen.next();
        if up_eval(&lc_a, t) == 0 || up_eval(&lc_b, t) == 0 {
            continue;
        }
        let eval_at = |src: &ModPoly| {
            let mut out = ModPoly::zero(nv);
            for (rest, poly) in src.split_by(v) {
                let c = up_eval(&poly, t);
                if c != 0 {
                    out.terms.insert(rest, c);
                }
            }
            out
        };
        let at = eval_at(&a_prim);
        let bt = eval_at(&b_prim);
        let gt = mod_gcd(&at, &bt, gen, budget)?;
        if gt.is_constant() {
            let mut map = BTreeMap::new();
            map.insert(vec![0; nv], cont_g);
            return Some(ModPoly::join(map, v, nv).monic());
        }
        let gt_lead = gt.terms.keys().next_back().unwrap().clone();
        match &lead {
            None => lead = Some(gt_lead),
            Some(cur) => {
                if gt_lead < *cur {
                    images.clear();
                    lead = Some(gt_lead);
                } else if gt_lead > *cur {
                    continue;
                }
            }
        }
        let scale = up_eval(&gamma, t);
        let mut h = gt.monic();
        for c in h.terms.values_mut() {
            *c = mulmod(*c, scale);
        }
        images.push((t, h));
        if images.len() == bound + 1 {
            let mut monomials: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
            for (_, img) in &images {
                monomials.extend(img.terms.keys().cloned());
            }
            let ts: Vec<u64> = images.iter().map(|(t, _)| *t).collect();
            let mut hmap: BTreeMap<Vec<u32>, Vec<u64>> = BTreeMap::new();
            for m in monomials {
                let vs: Vec<u64> = images
                    .iter()
                    .map(|(_, img)| img.terms.get(&m).copied().unwrap_or(0))
                    .collect();
                let poly = up_interp(&ts, &vs);
                if !poly.is_empty() {
                    hmap.insert(m, poly);
                }
            }
            if hmap.is_empty() {
                return None;
            }
            let cont_h = hmap.values().fold(Vec::new(), |acc, p| up_gcd(&acc, p));
            for p in hmap.values_mut() {
                *p = up_div_exact(p, &cont_h)?;
            }
            if cont_g.len() > 1 || cont_g.first() != Some(&1) {
                for p in hmap.values_mut() {
                    *p = up_mul(p, &cont_g);
                }
            }
            return Some(ModPoly::join(hmap, v, nv).monic());
        }
    }
}

/// Modular gcd with rational reconstruction, verified by exact trial
/// division. `None` means the caller must fall back to the exact path.
fn gcd_modular(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let nv = a.nvars();
    let a_int = a.normalized_primitive();
    let b_int = b.normalized_primitive();
    let pa = ModPoly::from_mpoly(&a_int)?;
    let pb = ModPoly::from_mpoly(&b_int)?;
    if pa.is_zero() || pb.is_zero() {
        return None;
    }
    if pa.terms.keys().next_back() != a_int.leading().map(|(e, _)| e)
        || pb.terms.keys().next_back() != b_int.leading().map(|(e, _)| e)
    {
        return None;
    }
    let mut gen = PointGen::new(0x5851F42D4C957F2D);
    let mut budget = 200_000u32;
    let gp = mod_gcd(&pa, &pb, &mut gen, &mut budget)?;
    if gp.is_constant() {
        return Some(MPoly::one(nv));
    }
    let la = a_int.leading().unwrap().1.to_integer();
    let lb = b_int.leading().unwrap().1.to_integer();
    let gam = la.gcd(&lb);
    let gam_p = rational_mod(&BigRational::from_integer(gam))?;
    if gam_p == 0 {
        return None;
    }
    let half = MOD_P / 2;
    let mut cand = MPoly::zero(nv);
    for (e, &c) in &gp.terms {
        let scaled = mulmod(c, gam_p);
        let sym = if scaled > half {
            BigInt::from(scaled) - BigInt::from(MOD_P)
        } else {
            BigInt::from(scaled)
        };
        cand.add_term(e.clone(), BigRational::from_integer(sym));
    }
    let cand = cand.normalized_primitive();
    if cand.leading().map(|(e, _)| e) != gp.terms.keys().next_back() {
        return None;
    }
    a_int.divexact(&cand)?;
    b_int.divexact(&cand)?;
    Some(cand)
}

fn trim_zeros(list: &mut Vec<MPoly>) {
    while list.last().map(|p| p.is_zero()).unwrap_or(false) {
        list.pop();
    }
}

/// Long division of univariate coefficient lists, exact at every step.
fn div_univar(num: &[MPoly], den: &[MPoly], nvars: usize) -> Option<Vec<MPoly>> {
    let dd = den.len() - 1;
    let mut rem: Vec<MPoly> = num.to_vec();
    trim_zeros(&mut rem);
    if rem.is_empty() {
        return Some(vec![MPoly::zero(nvars)]);
    }
    if rem.len() < den.len() {
        return None;
    }
    let dq = rem.len() - 1 - dd;
    let mut quot = vec![MPoly::zero(nvars); dq + 1];
    for k in (0..=dq).rev() {
        if rem.len() <= k + dd {
            continue;
        }
        let top = rem[k + dd].clone();
        if top.is_zero() {
            continue;
        }
        let q = top.divexact(&den[dd])?;
        for (j, dc) in den.iter().enumerate() {
            let prod = q.mul(dc);
            rem[k + j] = rem[k + j].sub(&prod);
        }
        quot[k] = q;
        trim_zeros(&mut rem);
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

/// Pseudo-remainder of coefficient lists in one variable; `None` means zero.
fn pseudo_rem(p: &[MPoly], q: &[MPoly]) -> Option<Vec<MPoly>> {
    let dq = q.len() - 1;
    let lcq = &q[dq];
    let mut r: Vec<MPoly> = p.to_vec();
    while r.len() > dq {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcq);
        }
        let shift = dr - dq;
        for (j, qc) in q.iter().enumerate() {
            let prod = lcr.mul(qc);
            r[shift + j] = r[shift + j].sub(&prod);
        }
        trim_zeros(&mut r);
        if r.is_empty() {
            return None;
        }
    }
    Some(r)
}

fn content(list: &[MPoly], nvars: usize) -> MPoly {
    let mut c = MPoly::zero(nvars);
    for p in list {
        if !p.is_zero() {
            c = gcd(&c, p);
        }
    }
    c
}

fn divide_list(list: &[MPoly], d: &MPoly) -> Vec<MPoly> {
    list.iter()
        .map(|p| p.divexact(d).expect("content divides every coefficient"))
        .collect()
}

/// Polynomial gcd by the primitive pseudo-remainder sequence, normalized to
/// coprime integer coefficients with positive leading coefficient. Monomial
/// content is split off first, and a modular evaluation certificate lets
/// provably coprime inputs skip the remainder sequence entirely.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    assert_eq!(a.nvars(), b.nvars());
    let nv = a.nvars();
    if a.is_zero() {
        return if b.is_zero() { b.clone() } else { b.normalized_primitive() };
    }
    if b.is_zero() {
        return a.normalized_primitive();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let shared_mono: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    if ma.iter().any(|&x| x > 0) || mb.iter().any(|&x| x > 0) {
        let sa = a.shift_down(&ma);
        let sb = b.shift_down(&mb);
        let core = gcd_stripped(&sa, &sb);
        return core.mul(&MPoly::monomial(nv, shared_mono, BigRational::one()));
    }
    gcd_stripped(a, b)
}

fn gcd_stripped(a: &MPoly, b: &MPoly) -> MPoly {
    let nv = a.nvars();
    let mut vars = a.vars_present();
    for v in b.vars_present() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.is_empty() || a.is_constant() || b.is_constant() {
        return MPoly::one(nv);
    }
    if let Some(g) = gcd_modular(a, b) {
        return g;
    }
    let v = *vars
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .unwrap();
    let ua = a.to_univar(v);
    let ub = b.to_univar(v);
    let ca = content(&ua, nv);
    let cb = content(&ub, nv);
    let cc = gcd(&ca, &cb);
    let mut p = divide_list(&ua, &ca);
    let mut q = divide_list(&ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            q = vec![MPoly::one(nv)];
            break;
        }
        match pseudo_rem(&p, &q) {
            None => break,
            Some(r) => {
                p = q;
                let cr = content(&r, nv);
                q = divide_list(&r, &cr);
            }
        }
    }
    MPoly::from_univar(&q, v, nv).mul(&cc).normalized_primitive()
}
