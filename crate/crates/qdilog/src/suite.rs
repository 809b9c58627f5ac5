use gencomplex::Lambda;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::compact::phi_ih_ratio;
use crate::contour::ContourSpec;
use crate::error::QdError;
use crate::flat::{f0, f0_contour};
use crate::flambda::f_lambda;
use crate::phi::{c_h, check_difference_eqs, phi, phi_with};

const PI: f64 = std::f64::consts::PI;

/// One property check: a residual against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteCheck {
    pub check_id: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl SuiteCheck {
    fn new(check_id: &str, residual: f64, tol: f64) -> Self {
        SuiteCheck {
            check_id: check_id.to_string(),
            residual,
            tol,
            pass: residual <= tol,
        }
    }
}

/// A bundle of property checks; passes when every check does.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
    pub pass: bool,
}

impl SuiteReport {
    fn from_checks(checks: Vec<SuiteCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { checks, pass }
    }

    pub fn max_residual_over_tol(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.residual / c.tol.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Sample points for the difference-equation grid, expressed in the rotated
/// frame of the default contour and kept low enough in the strip that both
/// shifted arguments are reachable without walking back to the start point.
fn strip_samples(h: Complex64) -> Result<Vec<Complex64>, QdError> {
    let spec = ContourSpec::default_for(h)?;
    let hw = spec.strip_half_width();
    let rot_back = Complex64::from_polar(1.0, -spec.theta());
    let mut samples = Vec::with_capacity(25);
    for &x in &linspace(-2.0, 2.0, 5) {
        for &y in &linspace(-0.35 * hw, -0.15 * hw, 5) {
            samples.push(rot_back * Complex64::new(x, y));
        }
    }
    Ok(samples)
}

/// Paired evaluation points for the involutivity and unitarity checks, in
/// the rotated frame so both z and -z sit well inside the strip.
fn paired_samples(h: Complex64) -> Result<Vec<Complex64>, QdError> {
    let spec = ContourSpec::default_for(h)?;
    let rot_back = Complex64::from_polar(1.0, -spec.theta());
    Ok([
        (0.3, 0.1),
        (-0.8, 0.2),
        (1.1, -0.3),
        (0.05, 0.45),
        (1.7, 0.0),
    ]
    .iter()
    .map(|&(x, y)| rot_back * Complex64::new(x, y))
    .collect())
}

fn contour_grid(h: Complex64) -> Vec<(f64, f64)> {
    let a_cap = 1.0_f64.min(1.0 / h.norm());
    let radii = [0.3 * a_cap, 0.5 * a_cap, 0.75 * a_cap];
    let angles: [f64; 3] = if h.im > 0.0 {
        [-1.1, -PI / 4.0, -0.15]
    } else if h.im < 0.0 {
        [0.15, PI / 4.0, 1.1]
    } else {
        [-0.5, 0.0, 0.5]
    };
    let mut grid = Vec::with_capacity(9);
    for &a in &radii {
        for &theta in &angles {
            grid.push((a, theta));
        }
    }
    grid
}

/// The full property suite for one parameter h with Re(h) >= 0: contour
/// invariance, both difference equations on a 5x5 strip grid, involutivity
/// with the exact constant, the unitarity pairing against conj(h), the value
/// at the origin, and for purely imaginary h the compact-ratio
/// cross-validation. Real h additionally gets the unit-modulus check on the
/// real axis.
pub fn sb_suite(h: Complex64) -> Result<SuiteReport, QdError> {
    let mut checks = Vec::new();

    let z_ref = Complex64::new(0.3, 0.1);
    let values = contour_grid(h)
        .par_iter()
        .map(|&(a, theta)| {
            let spec = ContourSpec::new(h, a, theta)?;
            Ok(phi_with(&spec, z_ref)?.value)
        })
        .collect::<Result<Vec<_>, QdError>>()?;
    let mut spread = 0.0f64;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            spread = spread.max((values[i] - values[j]).norm());
        }
    }
    checks.push(SuiteCheck::new("qdilog.contour_invariance", spread, 1e-9));

    let tol_diff = if h.im == 0.0 { 1e-8 } else { 1e-6 };
    let diff = check_difference_eqs(h, &strip_samples(h)?, tol_diff)?;
    checks.push(SuiteCheck::new(
        "qdilog.difference_eqs",
        diff.max_residual,
        tol_diff,
    ));

    let involutivity = paired_samples(h)?
        .par_iter()
        .map(|&z| {
            let lhs = phi(h, z)?.value * phi(h, -z)?.value;
            let rhs = c_h(h) * (z * z / (Complex64::new(0.0, 4.0 * PI) * h)).exp();
            Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
        })
        .collect::<Result<Vec<_>, QdError>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    checks.push(SuiteCheck::new("qdilog.involutivity", involutivity, 1e-8));

    let pairing = paired_samples(h)?
        .par_iter()
        .map(|&z| {
            let lhs = phi(h, z)?.value.conj() * phi(h.conj(), z.conj())?.value;
            Ok((lhs - Complex64::new(1.0, 0.0)).norm())
        })
        .collect::<Result<Vec<_>, QdError>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    checks.push(SuiteCheck::new("qdilog.unitarity_pairing", pairing, 1e-8));

    let origin = phi(h, Complex64::new(0.0, 0.0))?.value;
    let origin_residual = (origin * origin - c_h(h)).norm();
    checks.push(SuiteCheck::new(
        "qdilog.value_at_origin",
        origin_residual,
        1e-9,
    ));

    if h.re == 0.0 && h.im > 0.0 {
        let ratio_dev = [-1.0, -0.3, 0.2, 0.7, 1.5]
            .par_iter()
            .map(|&x| {
                let z = Complex64::new(x, 0.0);
                let slanted = phi(h, z)?.value;
                let ratio = phi_ih_ratio(h.im, z)?.value;
                Ok((slanted - ratio).norm())
            })
            .collect::<Result<Vec<_>, QdError>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        checks.push(SuiteCheck::new("qdilog.compact_ratio", ratio_dev, 1e-6));
    }

    if h.im == 0.0 {
        let unit_dev = linspace(-3.0, 3.0, 7)
            .par_iter()
            .map(|&x| {
                let v = phi(h, Complex64::new(x, 0.0))?.value;
                Ok((v.norm() - 1.0).abs())
            })
            .collect::<Result<Vec<_>, QdError>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        checks.push(SuiteCheck::new(
            "qdilog.unitarity_real_axis",
            unit_dev,
            1e-9,
        ));
    }

    Ok(SuiteReport::from_checks(checks))
}

/// Cross-checks of the flat dilogarithm: closed form against contour form on
/// a 5x5 grid, and invariance under the contour radius.
pub fn flat_suite() -> Result<SuiteReport, QdError> {
    let mut checks = Vec::new();

    let mut grid = Vec::with_capacity(25);
    for &x in &linspace(-2.0, 2.0, 5) {
        for &y in &linspace(-3.0, 3.0, 5) {
            grid.push((x, y));
        }
    }
    let contour_dev = grid
        .par_iter()
        .map(|&(x, y)| Ok((f0_contour(x, y, 0.4)?.value - f0(x, y)).norm()))
        .collect::<Result<Vec<_>, QdError>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    checks.push(SuiteCheck::new("qdilog.flat_contour", contour_dev, 1e-8));

    let narrow = f0_contour(0.5, 1.0, 0.2)?.value;
    let wide = f0_contour(0.5, 1.0, 0.6)?.value;
    checks.push(SuiteCheck::new(
        "qdilog.flat_radius_invariance",
        (narrow - wide).norm(),
        1e-9,
    ));

    let at_zero = (f0_contour(0.8, 0.0, 0.4)?.value - Complex64::new(1.0, 0.0)).norm();
    checks.push(SuiteCheck::new("qdilog.flat_zero_exponent", at_zero, 1e-15));

    Ok(SuiteReport::from_checks(checks))
}

/// Unitarity and involutivity of the combined function on a 5x5 grid.
pub fn f_lambda_suite(lam: Lambda, hbar: f64) -> Result<SuiteReport, QdError> {
    let mut grid = Vec::with_capacity(25);
    for &x in &linspace(-1.5, 1.5, 5) {
        for &y in &linspace(-1.5, 1.5, 5) {
            grid.push((x, y));
        }
    }

    let results = grid
        .par_iter()
        .map(|&(x, y)| {
            let value = f_lambda(lam, hbar, x, y)?;
            let mirrored = f_lambda(lam, hbar, -x, -y)?;
            let unit = (value.norm() - 1.0).abs();
            let target = Complex64::new(0.0, -x * y / PI).exp();
            let invol = (value * mirrored - target).norm();
            Ok((unit, invol))
        })
        .collect::<Result<Vec<_>, QdError>>()?;
    let unit_dev = results.iter().map(|r| r.0).fold(0.0f64, f64::max);
    let invol_dev = results.iter().map(|r| r.1).fold(0.0f64, f64::max);

    Ok(SuiteReport::from_checks(vec![
        SuiteCheck::new("qdilog.flambda.unitarity", unit_dev, 1e-8),
        SuiteCheck::new("qdilog.flambda.involutivity", invol_dev, 1e-7),
    ]))
}
