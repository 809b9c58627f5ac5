use crate::coeff::QCoeff;
use crate::error::QuantumError;
use classical_x::{mpoly_gcd, MPoly};
use num::{BigRational, One, Signed, Zero};
use std::fmt;

/// Rational function in q over ℚ, kept gcd-reduced with a normalized
/// denominator so equality is structural. This is the coefficient field of
/// the dilogarithm series, whose terms carry denominators ∏(q^{2j} − 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QRat {
    num: MPoly,
    den: MPoly,
}

fn leading_unit(p: &MPoly) -> BigRational {
    p.leading()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(BigRational::one)
}

impl QRat {
    fn make(num: MPoly, den: MPoly) -> Result<Self, QuantumError> {
        if den.is_zero() {
            return Err(QuantumError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QRat {
                num,
                den: MPoly::one(1),
            });
        }
        let g = mpoly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divexact(&g).expect("gcd divides numerator"),
                den.divexact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = leading_unit(&den).recip();
        if !lc.is_one() {
            num = num.mul_scalar(&lc);
            den = den.mul_scalar(&lc);
        }
        Ok(QRat { num, den })
    }

    pub fn zero() -> Self {
        QRat {
            num: MPoly::zero(1),
            den: MPoly::one(1),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: MPoly::one(1),
            den: MPoly::one(1),
        }
    }

    pub fn from_int(v: i64) -> Self {
        QRat {
            num: MPoly::constant(1, BigRational::from_integer(v.into())),
            den: MPoly::one(1),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        QRat {
            num: MPoly::constant(1, c),
            den: MPoly::one(1),
        }
    }

    /// q^m for any integer m.
    pub fn q_pow(m: i64) -> Self {
        if m >= 0 {
            QRat {
                num: MPoly::monomial(1, vec![m as u32], BigRational::one()),
                den: MPoly::one(1),
            }
        } else {
            QRat {
                num: MPoly::one(1),
                den: MPoly::monomial(1, vec![(-m) as u32], BigRational::one()),
            }
        }
    }

    /// Laurent coefficients become honest fractions; fails on q* terms.
    pub fn from_qcoeff(c: &QCoeff) -> Result<Self, QuantumError> {
        if c.uses_star() {
            return Err(QuantumError::StarredSlotUnavailable);
        }
        let mut acc = QRat::zero();
        for (&(m, _), v) in c.terms() {
            acc = acc.add(&QRat::q_pow(m).scale(v));
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QRat::zero();
        }
        QRat {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        QRat::make(num, den).expect("denominators are nonzero")
    }

    pub fn neg(&self) -> Self {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g1 = mpoly_gcd(&self.num, &other.den);
        let g2 = mpoly_gcd(&other.num, &self.den);
        let n1 = self.num.divexact(&g1).expect("gcd divides");
        let d2 = other.den.divexact(&g1).expect("gcd divides");
        let n2 = other.num.divexact(&g2).expect("gcd divides");
        let d1 = self.den.divexact(&g2).expect("gcd divides");
        QRat::make(n1.mul(&n2), d1.mul(&d2)).expect("denominators are nonzero")
    }

    pub fn inv(&self) -> Result<Self, QuantumError> {
        if self.num.is_zero() {
            return Err(QuantumError::DivisionByZero);
        }
        QRat::make(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, QuantumError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, QuantumError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitution q ↦ q^{−1}.
    pub fn subst_q_inv(&self) -> Self {
        let dn = self.num.degree_in(0) as i64;
        let dd = self.den.degree_in(0) as i64;
        let rev = |p: &MPoly, d: i64| -> MPoly {
            let mut acc = MPoly::zero(1);
            for (e, c) in p.terms() {
                acc = acc.add(&MPoly::monomial(1, vec![(d - e[0] as i64) as u32], c.clone()));
            }
            acc
        };
        let mut num = rev(&self.num, dn);
        let mut den = rev(&self.den, dd);
        let shift = dd - dn;
        if shift > 0 {
            num = num.mul(&MPoly::monomial(1, vec![shift as u32], BigRational::one()));
        } else if shift < 0 {
            den = den.mul(&MPoly::monomial(1, vec![(-shift) as u32], BigRational::one()));
        }
        QRat::make(num, den).expect("reversal keeps the denominator nonzero")
    }

    /// Value at q = 1; a reduced denominator vanishing there is a pole.
    pub fn eval_q1(&self) -> Result<BigRational, QuantumError> {
        let ds: BigRational = self.den.terms().map(|(_, c)| c.clone()).sum();
        if ds.is_zero() {
            return Err(QuantumError::PoleAtOne);
        }
        let ns: BigRational = self.num.terms().map(|(_, c)| c.clone()).sum();
        Ok(ns / ds)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", poly_str(&self.num))
        } else {
            write!(f, "({})/({})", poly_str(&self.num), poly_str(&self.den))
        }
    }
}

fn poly_str(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in p.terms() {
        if !out.is_empty() {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let a = c.abs();
        if e[0] == 0 {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            if e[0] == 1 {
                out.push('q');
            } else {
                out.push_str(&format!("q^{}", e[0]));
            }
        }
    }
    out
}
