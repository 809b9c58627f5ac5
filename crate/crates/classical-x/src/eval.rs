use crate::error::ClassicalError;
use crate::mpoly::MPoly;
use crate::ratexpr::RatExpr;
use cluster_core::{theta_from_punctures, ThetaTag, ThetaVec, Tri};
use gencomplex::{gc_add, gc_mul, Lambda, GC, GCf};
use num::ToPrimitive;
use serde::Serialize;

fn eval_poly(p: &MPoly, pt: &[GCf], lam: Lambda) -> Result<GCf, ClassicalError> {
    let mut acc = GC::zero(lam);
    for (exps, c) in p.terms() {
        let coeff = c
            .to_f64()
            .expect("rational coefficient convertible to f64");
        let mut t = GC::from_real(lam, coeff);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                t = gc_mul(&t, &pt[i])?;
            }
        }
        acc = gc_add(&acc, &t)?;
    }
    Ok(acc)
}

/// Multiplicative inverse in R_Λ, refused when x²+Λy² is (numerically) zero.
fn gc_unit_inverse(v: &GCf) -> Option<GCf> {
    let norm = v.re * v.re + v.lam.times(v.im * v.im);
    let scale = (v.re * v.re + v.im * v.im).max(1.0);
    if !norm.is_finite() || norm.abs() <= 1e-12 * scale {
        return None;
    }
    Some(GC::new(v.lam, v.re / norm, -v.im / norm))
}

/// Evaluate at a point with R_Λ coordinates; the denominator must land on
/// a unit, and an ℓ marker evaluates to the actual ℓ of the ring.
pub fn eval_at_point(f: &RatExpr, pt: &[GCf]) -> Result<GCf, ClassicalError> {
    if pt.len() != f.nvars() || pt.is_empty() {
        return Err(ClassicalError::RankMismatch {
            left: f.nvars(),
            right: pt.len(),
        });
    }
    let lam = pt[0].lam;
    let nv = eval_poly(f.num(), pt, lam)?;
    let dv = eval_poly(f.den(), pt, lam)?;
    let inv = gc_unit_inverse(&dv).ok_or_else(|| ClassicalError::NonUnitDenominator {
        factor: RatExpr::from_poly(f.den().clone()).to_string(),
    })?;
    let mut out = gc_mul(&nv, &inv)?;
    if f.has_ell() {
        out = gc_mul(&out, &GC::ell(lam))?;
    }
    Ok(out)
}

/// The monomial Z^θ as a rational expression.
pub fn theta_monomial(theta: &ThetaVec, nvars: usize) -> RatExpr {
    assert_eq!(theta.coefficients.len(), nvars);
    RatExpr::monomial(nvars, &theta.coefficients)
}

#[derive(Clone, Debug, Serialize)]
pub struct PunctureCheck {
    pub label: String,
    pub value: GCf,
    pub satisfied: bool,
}

/// Evaluate each puncture monomial Z^θ at the point and compare with 1.
pub fn check_puncture_constraint(
    t: &Tri,
    pt: &[GCf],
    tol: f64,
) -> Result<Vec<PunctureCheck>, ClassicalError> {
    theta_from_punctures(t)
        .iter()
        .map(|theta| {
            let m = theta_monomial(theta, t.n_arcs());
            let value = eval_at_point(&m, pt)?;
            let label = match &theta.tag {
                ThetaTag::Puncture(name) => name.clone(),
                ThetaTag::Kernel(i) => format!("kernel{i}"),
            };
            Ok(PunctureCheck {
                label,
                satisfied: (value.re - 1.0).abs() <= tol && value.im.abs() <= tol,
                value,
            })
        })
        .collect()
}
