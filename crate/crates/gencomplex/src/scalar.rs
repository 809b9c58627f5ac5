use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num::BigRational;
use num_complex::Complex;
use num_traits::Num;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GcError;

/// Sign of the cosmological constant; selects the ring R_Λ = R[ℓ]/(ℓ² + Λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lambda {
    MinusOne,
    Zero,
    PlusOne,
}

impl Lambda {
    pub const ALL: [Lambda; 3] = [Lambda::MinusOne, Lambda::Zero, Lambda::PlusOne];

    pub fn value(self) -> i64 {
        match self {
            Lambda::MinusOne => -1,
            Lambda::Zero => 0,
            Lambda::PlusOne => 1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self, GcError> {
        match v {
            -1 => Ok(Lambda::MinusOne),
            0 => Ok(Lambda::Zero),
            1 => Ok(Lambda::PlusOne),
            other => Err(GcError::BadLambda(other)),
        }
    }

    /// Multiplies a scalar by Λ without leaving its ring.
    pub fn times<T: GcScalar>(self, t: T) -> T {
        match self {
            Lambda::MinusOne => -t,
            Lambda::Zero => T::zero(),
            Lambda::PlusOne => t,
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Lambda::from_value(v).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Coefficient rings usable for R_Λ arithmetic.
pub trait GcScalar: Clone + Num + Neg<Output = Self> {}
impl<T: Clone + Num + Neg<Output = T>> GcScalar for T {}

/// A generalized complex number re + ℓ·im, tagged by its Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GC<T> {
    pub re: T,
    pub im: T,
    pub lam: Lambda,
}

impl<T: GcScalar> GC<T> {
    pub fn new(lam: Lambda, re: T, im: T) -> Self {
        GC { re, im, lam }
    }

    pub fn from_real(lam: Lambda, re: T) -> Self {
        GC::new(lam, re, T::zero())
    }

    pub fn zero(lam: Lambda) -> Self {
        GC::new(lam, T::zero(), T::zero())
    }

    pub fn one(lam: Lambda) -> Self {
        GC::new(lam, T::one(), T::zero())
    }

    /// The generator ℓ of the given ring.
    pub fn ell(lam: Lambda) -> Self {
        GC::new(lam, T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

fn check_tags<T>(a: &GC<T>, b: &GC<T>) -> Result<Lambda, GcError> {
    if a.lam == b.lam {
        Ok(a.lam)
    } else {
        Err(GcError::LambdaMismatch(a.lam.value(), b.lam.value()))
    }
}

pub fn gc_add<T: GcScalar>(a: &GC<T>, b: &GC<T>) -> Result<GC<T>, GcError> {
    let lam = check_tags(a, b)?;
    Ok(GC::new(
        lam,
        a.re.clone() + b.re.clone(),
        a.im.clone() + b.im.clone(),
    ))
}

pub fn gc_sub<T: GcScalar>(a: &GC<T>, b: &GC<T>) -> Result<GC<T>, GcError> {
    let lam = check_tags(a, b)?;
    Ok(GC::new(
        lam,
        a.re.clone() - b.re.clone(),
        a.im.clone() - b.im.clone(),
    ))
}

pub fn gc_neg<T: GcScalar>(a: &GC<T>) -> GC<T> {
    GC::new(a.lam, -a.re.clone(), -a.im.clone())
}

/// Product in R_Λ: (x, y)·(u, v) = (xu − Λyv, xv + yu).
pub fn gc_mul<T: GcScalar>(a: &GC<T>, b: &GC<T>) -> Result<GC<T>, GcError> {
    let lam = check_tags(a, b)?;
    let re = a.re.clone() * b.re.clone() - lam.times(a.im.clone() * b.im.clone());
    let im = a.re.clone() * b.im.clone() + a.im.clone() * b.re.clone();
    Ok(GC::new(lam, re, im))
}

/// Λ-conjugation x + ℓy ↦ x − ℓy.
pub fn gc_conj<T: GcScalar>(a: &GC<T>) -> GC<T> {
    GC::new(a.lam, a.re.clone(), -a.im.clone())
}

/// The matrix realization [[x, y], [−Λy, x]]. Multiplicative: the embedding
/// of a product equals the product of the embeddings.
pub fn gc_embed<T: GcScalar>(a: &GC<T>) -> [[T; 2]; 2] {
    [
        [a.re.clone(), a.im.clone()],
        [-a.lam.times(a.im.clone()), a.re.clone()],
    ]
}

/// Eigen-scalars of the matrix realization: Λ = −1 gives (x+y, x−y) and
/// Λ = +1 gives (x+iy, x−iy). Both maps are additive and multiplicative.
/// The ℓ-part of an R_0 element is nilpotent, so Λ = 0 is rejected.
pub fn gc_diagonalize<T: GcScalar>(a: &GC<T>) -> Result<(Complex<T>, Complex<T>), GcError> {
    match a.lam {
        Lambda::MinusOne => Ok((
            Complex::new(a.re.clone() + a.im.clone(), T::zero()),
            Complex::new(a.re.clone() - a.im.clone(), T::zero()),
        )),
        Lambda::PlusOne => Ok((
            Complex::new(a.re.clone(), a.im.clone()),
            Complex::new(a.re.clone(), -a.im.clone()),
        )),
        Lambda::Zero => Err(GcError::NotDiagonalizable),
    }
}

/// Exponential map onto the positive cone R_Λ^+.
pub fn gc_exp(a: &GC<f64>) -> GC<f64> {
    let (x, y) = (a.re, a.im);
    let (re, im) = match a.lam {
        Lambda::MinusOne => (x.exp() * y.cosh(), x.exp() * y.sinh()),
        Lambda::PlusOne => (x.exp() * y.cos(), x.exp() * y.sin()),
        Lambda::Zero => (x.exp(), x.exp() * y),
    };
    GC::new(a.lam, re, im)
}

/// Inverse of [`gc_exp`] on R_Λ^+. For Λ = +1 the principal branch is
/// taken, with the ℓ-part in (−π, π].
pub fn gc_log(a: &GC<f64>) -> Result<GC<f64>, GcError> {
    let (x, y) = (a.re, a.im);
    match a.lam {
        Lambda::MinusOne => {
            let (p, m) = (x + y, x - y);
            if p <= 0.0 || m <= 0.0 {
                return Err(GcError::OutsideDomain(format!(
                    "eigen-scalars ({p}, {m}) must both be positive"
                )));
            }
            Ok(GC::new(
                a.lam,
                (p.ln() + m.ln()) / 2.0,
                (p.ln() - m.ln()) / 2.0,
            ))
        }
        Lambda::PlusOne => {
            if x == 0.0 && y == 0.0 {
                return Err(GcError::OutsideDomain("zero has no logarithm".into()));
            }
            let mut theta = y.atan2(x);
            if theta == -std::f64::consts::PI {
                theta = std::f64::consts::PI;
            }
            Ok(GC::new(a.lam, x.hypot(y).ln(), theta))
        }
        Lambda::Zero => {
            if x <= 0.0 {
                return Err(GcError::OutsideDomain(format!(
                    "scalar part {x} must be positive"
                )));
            }
            Ok(GC::new(a.lam, x.ln(), y / x))
        }
    }
}

impl Serialize for GC<f64> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GC", 3)?;
        st.serialize_field("lambda", &self.lam)?;
        st.serialize_field("re", &self.re)?;
        st.serialize_field("im", &self.im)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct GcFloatRepr {
    lambda: Lambda,
    re: f64,
    im: f64,
}

impl<'de> Deserialize<'de> for GC<f64> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GcFloatRepr::deserialize(d)?;
        Ok(GC::new(r.lambda, r.re, r.im))
    }
}

impl Serialize for GC<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GC", 3)?;
        st.serialize_field("lambda", &self.lam)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct GcRatRepr {
    lambda: Lambda,
    re: String,
    im: String,
}

impl<'de> Deserialize<'de> for GC<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GcRatRepr::deserialize(d)?;
        let parse = |s: &str| {
            BigRational::from_str(s)
                .map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
        };
        Ok(GC::new(r.lambda, parse(&r.re)?, parse(&r.im)?))
    }
}
