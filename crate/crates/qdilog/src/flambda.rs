use gencomplex::Lambda;
use num_complex::Complex64;

use crate::error::QdError;
use crate::flat::f0;
use crate::phi::phi;

/// The combined unimodular function of the trilogy, one member per Lambda:
/// for Lambda = -1 the ratio of values at the real arguments x +- hbar y,
/// for Lambda = +1 the product of the parameter +-i hbar values at the
/// conjugate arguments x +- i hbar y, and for Lambda = 0 the flat
/// dilogarithm, which does not depend on hbar.
pub fn f_lambda(lam: Lambda, hbar: f64, x: f64, y: f64) -> Result<Complex64, QdError> {
    if !(hbar > 0.0) {
        return Err(QdError::NonPositiveHbar(hbar));
    }
    match lam {
        Lambda::MinusOne => {
            let h = Complex64::new(hbar, 0.0);
            let plus = phi(h, Complex64::new(x + hbar * y, 0.0))?;
            let minus = phi(h, Complex64::new(x - hbar * y, 0.0))?;
            Ok(plus.value / minus.value)
        }
        Lambda::PlusOne => {
            let h = Complex64::new(0.0, hbar);
            let plus = phi(h, Complex64::new(x, hbar * y))?;
            let minus = phi(-h, Complex64::new(x, -hbar * y))?;
            Ok(plus.value * minus.value)
        }
        Lambda::Zero => Ok(f0(x, y)),
    }
}
