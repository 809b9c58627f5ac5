use num_complex::Complex64;
use qdilog::{phi, phi_ih_ratio, psi_compact, psi_truncation_order, Method, QdError};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn empty_argument_gives_one() {
    for q in [c(0.5, 0.0), c(0.1, 0.3), c(-0.8, 0.0)] {
        let v = psi_compact(q, c(0.0, 0.0), 25).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
    }
}

#[test]
fn compact_difference_equation() {
    let q = c(0.5, 0.0);
    let z = c(0.3, 0.0);
    let nmax = 80;
    let lhs = psi_compact(q, q * q * z, nmax).unwrap().value;
    let rhs = (1.0 + q * z) * psi_compact(q, z, nmax).unwrap().value;
    assert!((lhs - rhs).norm() <= 1e-12);
}

#[test]
fn truncation_is_stable() {
    let q = c(0.5, 0.0);
    let z = c(1.0, 0.0);
    let coarse = psi_compact(q, z, 40).unwrap();
    let fine = psi_compact(q, z, 80).unwrap();
    assert!((coarse.value - fine.value).norm() <= 1e-15);
    assert!(coarse.est_error >= (coarse.value - fine.value).norm());
}

#[test]
fn truncation_order_reaches_the_tail_target() {
    for (q, z) in [
        (c(0.5, 0.0), c(1.0, 0.0)),
        (c(0.9, 0.0), c(3.0, 0.0)),
        (c(0.2079, 0.0), c(0.5, 0.5)),
    ] {
        let n = psi_truncation_order(q, z);
        let tail = q.norm().powi(2 * n as i32 - 1) * z.norm();
        assert!(tail < 1e-18, "q = {q}, z = {z}: tail {tail:.3e}");
    }
}

#[test]
fn domain_and_pole_errors() {
    assert!(matches!(
        psi_compact(c(1.0, 0.0), c(0.3, 0.0), 10),
        Err(QdError::BaseNotInDisc(_))
    ));
    assert!(matches!(
        psi_compact(c(1.3, 0.2), c(0.3, 0.0), 10),
        Err(QdError::BaseNotInDisc(_))
    ));
    // z = -1/q makes the first factor vanish
    assert!(matches!(
        psi_compact(c(0.5, 0.0), c(-2.0, 0.0), 10),
        Err(QdError::FactorVanishes { n: 1 })
    ));
    assert!(matches!(
        phi_ih_ratio(0.0, c(0.2, 0.0)),
        Err(QdError::NonPositiveHbar(_))
    ));
    assert!(matches!(
        phi_ih_ratio(-1.0, c(0.2, 0.0)),
        Err(QdError::NonPositiveHbar(_))
    ));
}

#[test]
fn ratio_agrees_with_the_slanted_contour() {
    for (hbar, xs) in [
        (0.5, [-1.0, 0.2, 1.5]),
        (1.0, [-0.5, 0.2, 0.9]),
        (2.0, [-1.0, 0.0, 0.7]),
    ] {
        for x in xs {
            let z = c(x, 0.0);
            let slanted = phi(c(0.0, hbar), z).unwrap().value;
            let ratio = phi_ih_ratio(hbar, z).unwrap();
            assert_eq!(ratio.method, Method::CompactRatio);
            assert!(
                (slanted - ratio.value).norm() <= 1e-6,
                "hbar = {hbar}, x = {x}: dev {:.3e}",
                (slanted - ratio.value).norm()
            );
        }
    }
}

#[test]
fn unitarity_pairing_between_opposite_slants() {
    for z in [c(0.2, 0.0), c(-0.7, 0.3), c(1.1, -0.2)] {
        let plus = phi_ih_ratio(1.0, z).unwrap().value;
        let minus = phi(c(0.0, -1.0), z.conj()).unwrap().value;
        assert!(
            (plus.conj() * minus - c(1.0, 0.0)).norm() <= 1e-8,
            "z = {z}"
        );
    }
}

#[test]
fn far_down_the_real_axis_only_the_numerator_tail_vanishes() {
    // For real z and h = i*hbar the denominator argument e^{z/h} = e^{-iz/hbar}
    // stays on the unit circle, so its compact product oscillates at a fixed
    // distance from 1 instead of converging; only the numerator argument e^z
    // decays. The full value therefore tends to the reciprocal of the
    // oscillating factor, not to 1.
    let pi = std::f64::consts::PI;
    let num = psi_compact(c((-pi).exp(), 0.0), c((-20.0f64).exp(), 0.0), 40)
        .unwrap()
        .value;
    assert!((num - c(1.0, 0.0)).norm() <= 1e-8);

    let den = psi_compact(c((-pi).exp(), 0.0), c(0.0, 20.0).exp(), 40)
        .unwrap()
        .value;
    assert!((den - c(1.0, 0.0)).norm() >= 1e-2);

    let v = phi_ih_ratio(1.0, c(-20.0, 0.0)).unwrap().value;
    let slanted = phi(c(0.0, 1.0), c(-20.0, 0.0)).unwrap().value;
    assert!((v - slanted).norm() <= 1e-10);
    assert!((v * den - num).norm() <= 1e-12);
    assert!((v - c(1.0, 0.0)).norm() >= 1e-2);
}
