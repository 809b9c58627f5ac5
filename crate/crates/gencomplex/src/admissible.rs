use num_complex::Complex64;

use crate::complexified::GCC;
use crate::error::GcError;
use crate::scalar::{Lambda, GC};

pub type BranchR = Box<dyn Fn(f64) -> Complex64 + Send + Sync>;
pub type BranchC = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A function extendable to R_Λ through its matrix form: a pair of diagonal
/// branches for Λ = ±1, or a value together with its derivative for Λ = 0.
pub enum AdmissibleFn {
    /// Λ = −1: branches evaluated at the real eigen-arguments x ± y.
    Split { plus: BranchR, minus: BranchR },
    /// Λ = +1: branches evaluated at the complex eigen-arguments x ± iy.
    Holo { plus: BranchC, minus: BranchC },
    /// Λ = 0: f₀ and f₀', acting as f₀(x) + ℓ·f₀'(x)·y. The derivative is
    /// supplied explicitly so closed-form functions stay exact.
    Flat { f: BranchR, df: BranchR },
}

impl AdmissibleFn {
    pub fn lam(&self) -> Lambda {
        match self {
            AdmissibleFn::Split { .. } => Lambda::MinusOne,
            AdmissibleFn::Holo { .. } => Lambda::PlusOne,
            AdmissibleFn::Flat { .. } => Lambda::Zero,
        }
    }

    /// The admissible extension of exp for any Λ, the model case of the
    /// calculus; it must agree with `gc_exp`.
    pub fn exp(lam: Lambda) -> Self {
        match lam {
            Lambda::MinusOne => AdmissibleFn::Split {
                plus: Box::new(|t| Complex64::new(t.exp(), 0.0)),
                minus: Box::new(|t| Complex64::new(t.exp(), 0.0)),
            },
            Lambda::PlusOne => AdmissibleFn::Holo {
                plus: Box::new(|z| z.exp()),
                minus: Box::new(|z| z.exp()),
            },
            Lambda::Zero => AdmissibleFn::Flat {
                f: Box::new(|t| Complex64::new(t.exp(), 0.0)),
                df: Box::new(|t| Complex64::new(t.exp(), 0.0)),
            },
        }
    }
}

fn finite(v: Complex64, arg: Complex64) -> Result<Complex64, GcError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(GcError::BranchEval { arg })
    }
}

/// Evaluates an admissible function at a point of R_Λ, recombining the
/// branch values into C_Λ coordinates.
pub fn apply_admissible(f: &AdmissibleFn, a: &GC<f64>) -> Result<GCC, GcError> {
    if f.lam() != a.lam {
        return Err(GcError::LambdaMismatch(f.lam().value(), a.lam.value()));
    }
    let (x, y) = (a.re, a.im);
    match f {
        AdmissibleFn::Split { plus, minus } => {
            let up = finite(plus(x + y), Complex64::new(x + y, 0.0))?;
            let um = finite(minus(x - y), Complex64::new(x - y, 0.0))?;
            Ok(GCC::new(a.lam, (up + um) / 2.0, (up - um) / 2.0))
        }
        AdmissibleFn::Holo { plus, minus } => {
            let zp = Complex64::new(x, y);
            let zm = Complex64::new(x, -y);
            let up = finite(plus(zp), zp)?;
            let um = finite(minus(zm), zm)?;
            Ok(GCC::new(
                a.lam,
                (up + um) / 2.0,
                (up - um) / Complex64::new(0.0, 2.0),
            ))
        }
        AdmissibleFn::Flat { f, df } => {
            let v = finite(f(x), Complex64::new(x, 0.0))?;
            let d = finite(df(x), Complex64::new(x, 0.0))?;
            Ok(GCC::new(a.lam, v, d * y))
        }
    }
}
