use gencomplex::Lambda;
use num_complex::Complex64;
use proptest::prelude::*;
use qdilog::{
    f0, f0_complex, f0_contour, f_lambda, f_lambda_suite, flat_suite, sb_suite, QdError,
};

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn zero_exponent_gives_one() {
    for x in [-3.0, -0.5, 0.0, 1.2, 4.0] {
        assert_eq!(f0(x, 0.0), c(1.0, 0.0));
    }
}

#[test]
fn closed_form_values() {
    // (1 + e^0)^{pi / (pi i)} = 2^{1/i} = e^{-i ln 2}
    let expected = c(0.0, -(2.0_f64.ln())).exp();
    assert!((f0(0.0, PI) - expected).norm() <= 1e-15);
    assert!((f0(0.0, PI) - c(0.76924, -0.63896)).norm() <= 1e-5);

    let pair = f0(1.0, PI) * f0(-1.0, -PI);
    assert!((pair - c(0.0, -1.0).exp()).norm() <= 1e-15);
    assert!((pair - c(0.54030, -0.84147)).norm() <= 1e-5);
}

#[test]
fn shift_of_the_exponent_multiplies_by_the_base() {
    for (x, y) in [(0.4, 0.9), (-1.3, 2.0), (2.5, -0.7)] {
        let lhs = f0_complex(x, c(y, PI));
        let rhs = (1.0 + c(x, 0.0).exp()) * f0(x, y);
        assert!((lhs - rhs).norm() / rhs.norm() <= 1e-12, "x = {x}, y = {y}");
    }
}

#[test]
fn contour_form_matches_the_closed_form() {
    let v = f0_contour(0.5, 1.0, 0.3).unwrap();
    assert!((v.value - f0(0.5, 1.0)).norm() <= 1e-8);
    assert!(v.est_error <= 1e-8);

    let narrow = f0_contour(0.5, 1.0, 0.2).unwrap().value;
    let wide = f0_contour(0.5, 1.0, 0.6).unwrap().value;
    assert!((narrow - wide).norm() <= 1e-9);

    let trivial = f0_contour(0.8, 0.0, 0.4).unwrap().value;
    assert_eq!(trivial, c(1.0, 0.0));

    for bad in [0.0, 1.0, -0.3] {
        assert!(matches!(
            f0_contour(0.5, 1.0, bad),
            Err(QdError::BadFlatRadius(_))
        ));
    }
}

#[test]
fn combined_function_at_zero_frequency() {
    // For the hyperbolic and flat rings the two factors cancel exactly at
    // y = 0. For the elliptic ring the second factor is the reciprocal of
    // the conjugate, so the moduli cancel but the phases add: the value is
    // exp(2i arg Phi^{i hbar}(x)), a unit-modulus number that is not 1.
    let hbar = 0.5;
    let x = 0.9;
    for lam in [Lambda::MinusOne, Lambda::Zero] {
        let v = f_lambda(lam, hbar, x, 0.0).unwrap();
        assert!(
            (v - c(1.0, 0.0)).norm() <= 1e-12,
            "lambda = {lam:?}: {v:?}"
        );
    }
    let v = f_lambda(Lambda::PlusOne, hbar, x, 0.0).unwrap();
    assert!((v.norm() - 1.0).abs() <= 1e-12);
    let base = phi(c(0.0, hbar), c(x, 0.0)).unwrap().value;
    let expected = base / base.conj();
    assert!((v - expected).norm() <= 1e-10, "{v:?} vs {expected:?}");
    assert!((v - c(1.0, 0.0)).norm() >= 1e-3);
}

#[test]
fn combined_function_involutivity_and_unitarity() {
    for lam in Lambda::ALL {
        let v = f_lambda(lam, 0.5, 0.7, 1.3).unwrap();
        let m = f_lambda(lam, 0.5, -0.7, -1.3).unwrap();
        let target = c(0.0, -0.7 * 1.3 / PI).exp();
        assert!(
            (v * m - target).norm() <= 1e-7,
            "lambda = {lam:?}: residual {:.3e}",
            (v * m - target).norm()
        );
    }
    let f1 = f_lambda(Lambda::PlusOne, 1.0, 0.7, 1.3).unwrap();
    assert!((f1.norm() - 1.0).abs() <= 1e-8);
}

#[test]
fn invalid_hbar_is_rejected() {
    for lam in Lambda::ALL {
        assert!(matches!(
            f_lambda(lam, 0.0, 0.5, 0.5),
            Err(QdError::NonPositiveHbar(_))
        ));
    }
}

#[test]
fn property_suites_pass_for_the_reference_parameters() {
    for h in [
        c(0.3, 0.0),
        c(0.7, 0.0),
        c(1.0, 0.0),
        c(0.0, 0.5),
        c(0.0, 1.0),
        c(0.0, 2.0),
    ] {
        let report = sb_suite(h).unwrap();
        assert!(
            report.pass,
            "h = {h}: worst check {:?}",
            report
                .checks
                .iter()
                .max_by(|a, b| (a.residual / a.tol).total_cmp(&(b.residual / b.tol)))
        );
        assert_eq!(report.checks.len(), 6);
        assert!(report.max_residual_over_tol() <= 1.0);
    }

    let flat = flat_suite().unwrap();
    assert!(flat.pass);
    assert_eq!(flat.checks.len(), 3);

    for lam in Lambda::ALL {
        for hbar in [0.5, 1.0] {
            let report = f_lambda_suite(lam, hbar).unwrap();
            assert!(report.pass, "lambda = {lam:?}, hbar = {hbar}");
            assert_eq!(report.checks.len(), 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flat_values_stay_on_the_unit_circle(
        x in -6.0f64..6.0,
        y in -6.0f64..6.0,
    ) {
        let v = f0(x, y);
        prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn flat_involutivity_holds_everywhere(
        x in -6.0f64..6.0,
        y in -6.0f64..6.0,
    ) {
        let target = c(0.0, -x * y / PI).exp();
        let residual = (f0(x, y) * f0(-x, -y) - target).norm();
        prop_assert!(residual <= 1e-12, "residual {residual:.3e}");
    }
}
