use num_complex::Complex64;

use crate::error::QdError;
use crate::phi::{Method, QDValue};
use crate::quad;

const PI: f64 = std::f64::consts::PI;

/// log(1 + e^x) without overflow for large x.
fn ln_one_plus_exp(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// The flat dilogarithm (1 + e^x)^{y / (pi i)} for a complex exponent
/// numerator y; the base is a positive real, so the principal log is the
/// only branch involved.
pub fn f0_complex(x: f64, y: Complex64) -> Complex64 {
    (Complex64::new(0.0, -1.0 / PI) * y * ln_one_plus_exp(x)).exp()
}

/// The flat dilogarithm (1 + e^x)^{y / (pi i)}. Unimodular for real x, y.
pub fn f0(x: f64, y: f64) -> Complex64 {
    f0_complex(x, Complex64::new(y, 0.0))
}

/// The flat dilogarithm from its contour-integral form
/// exp(-(y / 2 pi i) integral over Omega_a of e^{-ipx} / (sinh(pi p) p) dp),
/// cross-checkable against the closed form.
pub fn f0_contour(x: f64, y: f64, a: f64) -> Result<QDValue, QdError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(QdError::BadFlatRadius(a));
    }
    let g = |p: Complex64| -> Complex64 {
        (-Complex64::i() * p * x).exp() / ((PI * p).sinh() * p)
    };

    // Both rays together; the integrand decays like e^{-pi t} with
    // oscillation rate |x|.
    let both_rays = |t: f64| g(Complex64::new(t, 0.0)) + g(Complex64::new(-t, 0.0));
    let t_end = ((52.0 + (1.0 + x.abs()).ln()) / PI).max(2.0) + 1.0;
    let max_width = (20.0 / (1.0 + x.abs())).clamp(0.25, 2.0);
    let rays = quad::ray(&both_rays, a, t_end, max_width);

    let arc_f = |phi: f64| {
        let dir = Complex64::from_polar(1.0, phi);
        let p = a * dir;
        -(Complex64::i() * a * dir) * g(p)
    };
    let (arc_v, arc_e) = quad::arc(&arc_f);

    let integral = rays.value + arc_v;
    let err_integral = rays.est_error + arc_e;
    if err_integral > 1e-3 * integral.norm().max(1.0) {
        return Err(QdError::QuadratureStalled {
            residual: err_integral,
            panels: rays.panels,
        });
    }
    // -(y / 2 pi i) = i y / (2 pi)
    let value = (Complex64::new(0.0, y / (2.0 * PI)) * integral).exp();
    let est_error = value.norm() * (y.abs() / (2.0 * PI)) * err_integral;
    Ok(QDValue {
        value,
        est_error,
        method: Method::Barnes,
        shifts: 0,
    })
}
