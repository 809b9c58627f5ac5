use crate::error::QuantumError;
use num::{BigRational, One, ToPrimitive, Zero};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in the quantum parameter q, and in the independent
/// starred symbol q* used by the Λ = 0 doubling, with rational coefficients.
///
/// Keys are `(q exponent, q* exponent)`; the map holds nonzero coefficients
/// only, so structural equality is canonical.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QCoeff {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        QCoeff::monomial(0, 0, BigRational::one())
    }

    /// c · q^m · q*^ms, dropped entirely when c = 0.
    pub fn monomial(m: i64, ms: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, ms), c);
        }
        QCoeff { terms }
    }

    pub fn from_rational(c: BigRational) -> Self {
        QCoeff::monomial(0, 0, c)
    }

    pub fn from_int(v: i64) -> Self {
        QCoeff::from_rational(BigRational::from_integer(v.into()))
    }

    /// q^m.
    pub fn q_pow(m: i64) -> Self {
        QCoeff::monomial(m, 0, BigRational::one())
    }

    /// q*^m.
    pub fn qstar_pow(m: i64) -> Self {
        QCoeff::monomial(0, m, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_unit()
            .map(|((m, ms), c)| m == 0 && ms == 0 && c.is_one())
            .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigRational)> {
        self.terms.iter()
    }

    /// True when any term touches the starred symbol.
    pub fn uses_star(&self) -> bool {
        self.terms.keys().any(|&(_, ms)| ms != 0)
    }

    /// The single term of a unit monomial, if the coefficient is one.
    pub fn as_unit(&self) -> Option<((i64, i64), &BigRational)> {
        if self.terms.len() == 1 {
            let (&k, c) = self.terms.iter().next().unwrap();
            Some((k, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let entry = terms.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&k);
            }
        }
        QCoeff { terms }
    }

    pub fn neg(&self) -> Self {
        QCoeff {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        for (&(a, b), c1) in &self.terms {
            for (&(u, v), c2) in &other.terms {
                let entry = terms
                    .entry((a + u, b + v))
                    .or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QCoeff { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QCoeff::zero();
        }
        QCoeff {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Inverse of a unit monomial.
    pub fn inv(&self) -> Result<Self, QuantumError> {
        let ((m, ms), c) = self.as_unit().ok_or(QuantumError::CoeffNotUnit)?;
        Ok(QCoeff::monomial(-m, -ms, c.recip()))
    }

    /// Value at q = q* = 1.
    pub fn eval_q1(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Substitution q ↦ q^{−1}, leaving q* untouched.
    pub fn subst_q_inv(&self) -> Self {
        QCoeff {
            terms: self
                .terms
                .iter()
                .map(|(&(m, ms), c)| ((-m, ms), c.clone()))
                .collect(),
        }
    }

    /// Swap the q and q* exponent slots.
    pub fn swap_slots(&self) -> Self {
        QCoeff {
            terms: self
                .terms
                .iter()
                .map(|(&(m, ms), c)| ((ms, m), c.clone()))
                .collect(),
        }
    }

    /// Numeric value at concrete q and q*.
    pub fn eval_complex(&self, q: Complex64, qs: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(m, ms), c) in &self.terms {
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += q.powi(m as i32) * qs.powi(ms as i32) * c;
        }
        acc
    }
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(m, ms), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || (m == 0 && ms == 0) {
                parts.push(c.to_string());
            }
            if m != 0 {
                parts.push(format!("q^{m}"));
            }
            if ms != 0 {
                parts.push(format!("q*^{ms}"));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
