use num_complex::Complex64;

use crate::error::QdError;
use crate::phi::{Method, QDValue};

const PI: f64 = std::f64::consts::PI;

/// Truncation order that pushes the product tail below 1e-18 for base q and
/// argument z.
pub fn psi_truncation_order(q: Complex64, z: Complex64) -> usize {
    let qn = q.norm();
    let zn = z.norm();
    if zn == 0.0 || qn == 0.0 {
        return 1;
    }
    let needed = ((1e-18f64.ln() - zn.ln()) / (2.0 * qn.ln()) + 0.5).ceil();
    (needed.max(1.0) as usize).min(100_000)
}

/// The compact product prod_{n=1}^{nmax} (1 + q^{2n-1} z)^{-1}, with the
/// truncated tail folded into the error estimate.
pub fn psi_compact(q: Complex64, z: Complex64, nmax: usize) -> Result<QDValue, QdError> {
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(QdError::BaseNotInDisc(qn));
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut q_odd = q;
    let q_sq = q * q;
    for n in 1..=nmax {
        let factor = 1.0 + q_odd * z;
        if factor.norm() < 1e-12 {
            return Err(QdError::FactorVanishes { n });
        }
        value /= factor;
        q_odd *= q_sq;
    }
    // log of the remaining product is bounded by sum_{n > nmax} |q|^{2n-1}|z|.
    let tail = q_odd.norm() * z.norm() / (1.0 - qn * qn);
    let est_error = value.norm() * (tail + 1e-16 * nmax as f64);
    Ok(QDValue {
        value,
        est_error,
        method: Method::ClosedForm,
        shifts: 0,
    })
}

/// The parameter-i-hbar dilogarithm as a ratio of two compact products:
/// psi at base e^{-pi hbar} and argument e^z over psi at base e^{-pi/hbar}
/// and argument e^{z/(i hbar)}.
pub fn phi_ih_ratio(hbar: f64, z: Complex64) -> Result<QDValue, QdError> {
    if !(hbar > 0.0) {
        return Err(QdError::NonPositiveHbar(hbar));
    }
    let h = Complex64::new(0.0, hbar);
    let q_num = Complex64::new((-PI * hbar).exp(), 0.0);
    let q_den = Complex64::new((-PI / hbar).exp(), 0.0);
    let arg_num = z.exp();
    let arg_den = (z / h).exp();
    let num = psi_compact(q_num, arg_num, psi_truncation_order(q_num, arg_num))?;
    let den = psi_compact(q_den, arg_den, psi_truncation_order(q_den, arg_den))?;
    let value = num.value / den.value;
    let rel = num.est_error / num.value.norm() + den.est_error / den.value.norm();
    Ok(QDValue {
        value,
        est_error: value.norm() * rel,
        method: Method::CompactRatio,
        shifts: 0,
    })
}
