use gencomplex::{
    apply_admissible, gc_exp, gcc_mul, gcc_scale, gcc_star, AdmissibleFn, GcError, Lambda, Sector,
    GC, GCC,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

#[test]
fn exp_calculus_matches_flat_exponential() {
    let a = GC::new(Lambda::Zero, 0.0, 3.0);
    let v = apply_admissible(&AdmissibleFn::exp(Lambda::Zero), &a).unwrap();
    assert!(close(v.re, Complex64::new(1.0, 0.0), 1e-14));
    assert!(close(v.im, Complex64::new(3.0, 0.0), 1e-14));
}

#[test]
fn exp_calculus_matches_circular_exponential() {
    let a = GC::new(Lambda::PlusOne, 0.0, std::f64::consts::FRAC_PI_2);
    let v = apply_admissible(&AdmissibleFn::exp(Lambda::PlusOne), &a).unwrap();
    assert!(close(v.re, Complex64::new(0.0, 0.0), 1e-14));
    assert!(close(v.im, Complex64::new(1.0, 0.0), 1e-14));
}

#[test]
fn flat_square_reproduces_nilpotent_expansion() {
    let f = AdmissibleFn::Flat {
        f: Box::new(|t| Complex64::new(t * t, 0.0)),
        df: Box::new(|t| Complex64::new(2.0 * t, 0.0)),
    };
    let v = apply_admissible(&f, &GC::new(Lambda::Zero, 3.0, 2.0)).unwrap();
    assert!(close(v.re, Complex64::new(9.0, 0.0), 1e-14));
    assert!(close(v.im, Complex64::new(12.0, 0.0), 1e-14));
}

#[test]
fn branch_pole_reports_offending_argument() {
    let f = AdmissibleFn::Split {
        plus: Box::new(|t| Complex64::new(1.0 / t, 0.0)),
        minus: Box::new(|t| Complex64::new(1.0, 0.0) * t),
    };
    let err = apply_admissible(&f, &GC::new(Lambda::MinusOne, 1.0, -1.0)).unwrap_err();
    match err {
        GcError::BranchEval { arg } => assert_eq!(arg, Complex64::new(0.0, 0.0)),
        other => panic!("expected a branch evaluation error, got {other:?}"),
    }
}

#[test]
fn admissible_lambda_must_match_argument() {
    let f = AdmissibleFn::exp(Lambda::Zero);
    let a = GC::new(Lambda::PlusOne, 0.0, 0.0);
    assert_eq!(
        apply_admissible(&f, &a),
        Err(GcError::LambdaMismatch(0, 1))
    );
}

#[test]
fn star_of_flat_generator_lands_in_starred_sector() {
    let ell = GCC::new(Lambda::Zero, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let starred = gcc_star(&ell);
    assert_eq!(starred.sector, Sector::Starred);
    assert_eq!(starred.im, Complex64::new(1.0, 0.0));
    assert_eq!(gcc_star(&starred), ell);
}

#[test]
fn cross_sector_products_are_refused() {
    let plain = GCC::new(Lambda::Zero, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
    let starred = gcc_star(&plain);
    assert_eq!(gcc_mul(&plain, &starred), Err(GcError::SectorMismatch));
}

fn any_lambda() -> impl Strategy<Value = Lambda> {
    prop_oneof![
        Just(Lambda::MinusOne),
        Just(Lambda::Zero),
        Just(Lambda::PlusOne)
    ]
}

fn any_c64() -> impl Strategy<Value = Complex64> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn any_gcc() -> impl Strategy<Value = GCC> {
    (any_lambda(), any_c64(), any_c64()).prop_map(|(lam, re, im)| GCC::new(lam, re, im))
}

proptest! {
    #[test]
    fn exp_calculus_agrees_with_gc_exp(
        lam in any_lambda(),
        re in -5.0f64..5.0,
        im in -5.0f64..5.0,
    ) {
        let a = GC::new(lam, re, im);
        let via_calculus = apply_admissible(&AdmissibleFn::exp(lam), &a).unwrap();
        let direct = gc_exp(&a);
        prop_assert!(close(via_calculus.re, Complex64::new(direct.re, 0.0), 1e-12));
        prop_assert!(close(via_calculus.im, Complex64::new(direct.im, 0.0), 1e-12));
    }

    #[test]
    fn star_is_a_conjugate_linear_involution(z in any_gcc(), c in any_c64()) {
        let twice = gcc_star(&gcc_star(&z));
        prop_assert_eq!(twice, z);
        let lhs = gcc_star(&gcc_scale(c, &z));
        let rhs = gcc_scale(c.conj(), &gcc_star(&z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_multiplicative_up_to_sector(
        lam in any_lambda(),
        a in any_c64(), b in any_c64(), c in any_c64(), d in any_c64(),
    ) {
        let z = GCC::new(lam, a, b);
        let w = GCC::new(lam, c, d);
        let lhs = gcc_star(&gcc_mul(&z, &w).unwrap());
        let rhs = gcc_mul(&gcc_star(&z), &gcc_star(&w)).unwrap();
        prop_assert!(close(lhs.re, rhs.re, 1e-12));
        prop_assert!(close(lhs.im, rhs.im, 1e-12));
        prop_assert_eq!(lhs.sector, rhs.sector);
    }
}
