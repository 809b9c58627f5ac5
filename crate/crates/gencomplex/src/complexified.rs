use num_complex::Complex64;

use crate::error::GcError;
use crate::scalar::Lambda;

/// Which copy of C_0 a value lives in. The star map on C_0 exchanges the
/// copy spanned by (1, ℓ) with the copy spanned by (1, ℓ*); the two copies
/// are kept independent and are never multiplied together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Plain,
    Starred,
}

/// Element of the complexified ring C_Λ, written re + ℓ·im with complex
/// coordinates. Values with Λ = ±1 always live in the `Plain` sector; for
/// Λ = 0 a `Starred` value has coordinates with respect to (1, ℓ*).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GCC {
    pub lam: Lambda,
    pub re: Complex64,
    pub im: Complex64,
    pub sector: Sector,
}

impl GCC {
    pub fn new(lam: Lambda, re: Complex64, im: Complex64) -> Self {
        GCC {
            lam,
            re,
            im,
            sector: Sector::Plain,
        }
    }

    /// A value carried by the ℓ* sector of C_0.
    pub fn starred(re: Complex64, im: Complex64) -> Self {
        GCC {
            lam: Lambda::Zero,
            re,
            im,
            sector: Sector::Starred,
        }
    }

    pub fn from_real_pair(lam: Lambda, re: f64, im: f64) -> Self {
        GCC::new(lam, Complex64::new(re, 0.0), Complex64::new(im, 0.0))
    }
}

fn check(a: &GCC, b: &GCC) -> Result<(), GcError> {
    if a.lam != b.lam {
        return Err(GcError::LambdaMismatch(a.lam.value(), b.lam.value()));
    }
    if a.sector != b.sector {
        return Err(GcError::SectorMismatch);
    }
    Ok(())
}

pub fn gcc_add(a: &GCC, b: &GCC) -> Result<GCC, GcError> {
    check(a, b)?;
    Ok(GCC {
        lam: a.lam,
        re: a.re + b.re,
        im: a.im + b.im,
        sector: a.sector,
    })
}

/// Product in C_Λ. Operands must share a sector; the generator of either
/// sector squares to −Λ.
pub fn gcc_mul(a: &GCC, b: &GCC) -> Result<GCC, GcError> {
    check(a, b)?;
    let lam = Complex64::new(a.lam.value() as f64, 0.0);
    Ok(GCC {
        lam: a.lam,
        re: a.re * b.re - lam * a.im * b.im,
        im: a.re * b.im + a.im * b.re,
        sector: a.sector,
    })
}

pub fn gcc_scale(c: Complex64, a: &GCC) -> GCC {
    GCC {
        lam: a.lam,
        re: c * a.re,
        im: c * a.im,
        sector: a.sector,
    }
}

/// The star structure of C_Λ: conjugate-linear on coefficients, with
/// star(ℓ) = −Λℓ for Λ = ±1 and star(ℓ) = ℓ* for Λ = 0.
pub fn gcc_star(a: &GCC) -> GCC {
    match a.lam {
        Lambda::MinusOne => GCC {
            lam: a.lam,
            re: a.re.conj(),
            im: a.im.conj(),
            sector: a.sector,
        },
        Lambda::PlusOne => GCC {
            lam: a.lam,
            re: a.re.conj(),
            im: -a.im.conj(),
            sector: a.sector,
        },
        Lambda::Zero => GCC {
            lam: a.lam,
            re: a.re.conj(),
            im: a.im.conj(),
            sector: match a.sector {
                Sector::Plain => Sector::Starred,
                Sector::Starred => Sector::Plain,
            },
        },
    }
}
