use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::contour::ContourSpec;
use crate::error::QdError;
use crate::quad;

const PI: f64 = std::f64::consts::PI;

/// Minimum allowed distance from an evaluation point to the pole lattice.
pub const POLE_GUARD: f64 = 1e-6;

/// Pointwise magnitude below which the ray integrand is treated as zero;
/// sets the truncation length of the two rays.
const TAIL_FLOOR_LOG: f64 = 52.0;

/// How the value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Barnes,
    Slanted,
    CompactRatio,
    ClosedForm,
}

/// A numeric value with a quadrature error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QDValue {
    pub value: Complex64,
    pub est_error: f64,
    pub method: Method,
    /// Difference-equation steps taken to bring the argument into the strip.
    pub shifts: usize,
}

/// Which lattice of special points to locate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Zero,
    Pole,
}

/// The lattice point ((2n+1) + (2m+1) h) pi i for zeros, its negative for
/// poles.
pub fn locate_zero_pole(h: Complex64, n: u32, m: u32, kind: LatticeKind) -> Complex64 {
    let bracket = Complex64::new((2 * n + 1) as f64, 0.0) + ((2 * m + 1) as f64) * h;
    let point = Complex64::new(0.0, PI) * bracket;
    match kind {
        LatticeKind::Zero => point,
        LatticeKind::Pole => -point,
    }
}

/// Nearest pole to z and the distance to it.
pub fn nearest_pole(h: Complex64, z: Complex64) -> (Complex64, f64) {
    let mut best_point = locate_zero_pole(h, 0, 0, LatticeKind::Pole);
    let mut best = (z - best_point).norm();
    // |pole(n, m)| >= pi (2n+1), so only rows below this bound can beat the
    // current best distance; within a row the distance is convex in m, so
    // the two odd integers nearest the real minimizer suffice.
    let reach = z.norm() + best;
    let n_max = (reach / (2.0 * PI)).ceil().max(0.0) as u32;
    let step = Complex64::new(0.0, -PI) * h;
    for n in 0..=n_max {
        let w = z + Complex64::new(0.0, PI * (2 * n + 1) as f64);
        let t_star = (w * step.conj()).re / step.norm_sqr();
        let m_star = (t_star - 1.0) / 2.0;
        for m_try in [m_star.floor(), m_star.ceil()] {
            let m = m_try.max(0.0) as u32;
            let p = locate_zero_pole(h, n, m, LatticeKind::Pole);
            let d = (z - p).norm();
            if d < best {
                best = d;
                best_point = p;
            }
        }
    }
    (best_point, best)
}

fn guard_poles(h: Complex64, z: Complex64) -> Result<(), QdError> {
    let (pole, dist) = nearest_pole(h, z);
    if dist < POLE_GUARD {
        return Err(QdError::NearPole { z, pole, dist });
    }
    Ok(())
}

/// Multiplier of the h-step equation at w: the value at w + 2 pi i h equals
/// this factor times the value at w.
fn h_step_multiplier(h: Complex64, w: Complex64) -> Complex64 {
    1.0 + (Complex64::new(0.0, PI) * h + w).exp()
}

/// Multiplier of the unit-step equation at w: the value at w + 2 pi i equals
/// this factor times the value at w.
fn unit_step_multiplier(h: Complex64, w: Complex64) -> Complex64 {
    1.0 + (Complex64::new(0.0, PI) / h + w / h).exp()
}

/// The contour integral on the base strip. Returns the integral value and an
/// absolute error estimate.
fn strip_integral(spec: &ContourSpec, z: Complex64) -> (Complex64, f64) {
    let h = spec.h();
    let a = spec.a();
    let rot = Complex64::from_polar(1.0, spec.theta());
    let g = |p: Complex64| -> Complex64 {
        let num = (-Complex64::i() * p * z).exp();
        num / ((PI * p).sinh() * (PI * h * p).sinh() * p)
    };

    let hw = spec.strip_half_width();
    let im_part = (rot * z).im;
    let alpha = (hw - im_part).min(hw + im_part);
    debug_assert!(alpha > 0.0, "argument escaped outside the strip");
    let t_end = ((TAIL_FLOOR_LOG + (1.0 + z.norm()).ln()) / alpha).max(2.0) + 1.0;
    let osc = (rot * z).re.abs() + PI * (rot * (1.0 + h)).im.abs();
    let max_width = (20.0 / (1.0 + osc)).clamp(0.25, 2.0);

    let both_rays = |t: f64| {
        let p = rot * t;
        rot * (g(p) + g(-p))
    };
    let rays = quad::ray(&both_rays, a, t_end, max_width);

    let arc_f = |phi: f64| {
        let dir = Complex64::from_polar(1.0, spec.theta() + phi);
        let p = a * dir;
        -(Complex64::i() * a * dir) * g(p)
    };
    let (arc_v, arc_e) = quad::arc(&arc_f);

    (rays.value + arc_v, rays.est_error + arc_e)
}

/// Slanted contour evaluation with a fixed contour. The argument is walked
/// into the strip by the difference equations when needed; the accumulated
/// multiplier is exact up to rounding.
pub fn phi_with(spec: &ContourSpec, z: Complex64) -> Result<QDValue, QdError> {
    let h = spec.h();
    guard_poles(h, z)?;

    let rot = Complex64::from_polar(1.0, spec.theta());
    let hw = spec.strip_half_width();
    let band = 0.9 * hw;

    // Escape by the smaller of the two shift strides: fewer wasted steps and
    // no overshoot past the opposite band edge.
    let stride_h = 2.0 * PI * (h * rot).re;
    let stride_unit = 2.0 * PI * spec.theta().cos();
    let (shift, stride, use_h) = if stride_h <= stride_unit {
        (Complex64::new(0.0, 2.0 * PI) * h, stride_h, true)
    } else {
        (Complex64::new(0.0, 2.0 * PI), stride_unit, false)
    };
    debug_assert!(stride > 0.0);

    let multiplier = |w: Complex64| {
        if use_h {
            h_step_multiplier(h, w)
        } else {
            unit_step_multiplier(h, w)
        }
    };

    let mut zc = z;
    let mut factor = Complex64::new(1.0, 0.0);
    let mut shifts = 0usize;
    while (rot * zc).im > band {
        zc -= shift;
        factor *= multiplier(zc);
        shifts += 1;
        if shifts > 4000 {
            return Err(QdError::TooManyShifts(shifts));
        }
    }
    while (rot * zc).im < -band {
        factor /= multiplier(zc);
        zc += shift;
        shifts += 1;
        if shifts > 4000 {
            return Err(QdError::TooManyShifts(shifts));
        }
    }

    let (integral, err_integral) = strip_integral(spec, zc);
    if err_integral > 1e-3 * integral.norm().max(1.0) {
        return Err(QdError::QuadratureStalled {
            residual: err_integral,
            panels: 0,
        });
    }
    let base = (-integral / 4.0).exp();
    let value = factor * base;
    let est_error = value.norm() * (err_integral / 4.0 + 1e-15 * (1 + shifts) as f64);
    let method = if spec.theta() == 0.0 {
        Method::Barnes
    } else {
        Method::Slanted
    };
    Ok(QDValue {
        value,
        est_error,
        method,
        shifts,
    })
}

/// The quantum dilogarithm at parameter h and argument z.
///
/// For Re(h) >= 0 this is the slanted contour integral with the default
/// contour; for negative real h it is the reciprocal of the value at -h, and
/// no other h with Re(h) < 0 is supported.
pub fn phi(h: Complex64, z: Complex64) -> Result<QDValue, QdError> {
    if h == Complex64::new(0.0, 0.0) {
        return Err(QdError::ZeroH);
    }
    if h.re < 0.0 {
        if h.im != 0.0 {
            return Err(QdError::UnsupportedH(h));
        }
        let inner = phi(-h, z)?;
        let value = inner.value.inv();
        return Ok(QDValue {
            value,
            est_error: inner.est_error * value.norm() / inner.value.norm(),
            method: inner.method,
            shifts: inner.shifts,
        });
    }
    let spec = ContourSpec::default_for(h)?;
    phi_with(&spec, z)
}

/// The involutivity constant c_h = exp(-pi i (h + 1/h) / 12).
pub fn c_h(h: Complex64) -> Complex64 {
    (Complex64::new(0.0, -PI / 12.0) * (h + h.inv())).exp()
}

/// One difference-equation sample: both residuals are relative to the size
/// of the multiplied side.
#[derive(Debug, Clone, Serialize)]
pub struct DiffEqCheck {
    pub z_re: f64,
    pub z_im: f64,
    pub residual_h_step: f64,
    pub residual_unit_step: f64,
    pub pass: bool,
}

/// Residual report for the two difference equations over a sample set.
#[derive(Debug, Clone, Serialize)]
pub struct DiffEqReport {
    pub h_re: f64,
    pub h_im: f64,
    pub tol: f64,
    pub max_residual: f64,
    pub checks: Vec<DiffEqCheck>,
    pub pass: bool,
}

/// Check the two difference equations at each sample point: the value at
/// z + 2 pi i h against (1 + e^{pi i h} e^z) times the value at z, and the
/// value at z + 2 pi i against (1 + e^{pi i / h} e^{z/h}) times it.
pub fn check_difference_eqs(
    h: Complex64,
    samples: &[Complex64],
    tol: f64,
) -> Result<DiffEqReport, QdError> {
    let checks = samples
        .par_iter()
        .map(|&z| {
            let at_z = phi(h, z)?.value;
            let at_h_step = phi(h, z + Complex64::new(0.0, 2.0 * PI) * h)?.value;
            let at_unit_step = phi(h, z + Complex64::new(0.0, 2.0 * PI))?.value;
            let rhs_h = h_step_multiplier(h, z) * at_z;
            let rhs_unit = unit_step_multiplier(h, z) * at_z;
            let residual_h_step = (at_h_step - rhs_h).norm() / rhs_h.norm().max(1.0);
            let residual_unit_step = (at_unit_step - rhs_unit).norm() / rhs_unit.norm().max(1.0);
            Ok(DiffEqCheck {
                z_re: z.re,
                z_im: z.im,
                residual_h_step,
                residual_unit_step,
                pass: residual_h_step <= tol && residual_unit_step <= tol,
            })
        })
        .collect::<Result<Vec<_>, QdError>>()?;
    let max_residual = checks
        .iter()
        .map(|c| c.residual_h_step.max(c.residual_unit_step))
        .fold(0.0f64, f64::max);
    let pass = checks.iter().all(|c| c.pass);
    Ok(DiffEqReport {
        h_re: h.re,
        h_im: h.im,
        tol,
        max_residual,
        checks,
        pass,
    })
}
