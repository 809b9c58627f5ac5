use cluster_core::ExMat;
use gencomplex::Lambda;
use num::{BigRational, One, Zero};
use proptest::prelude::*;
use quantum_torus::{q_mul, rational, AlgCtx, QCoeff, QElem, QRat, QuantumError};

fn exmat(rows: Vec<Vec<i64>>) -> ExMat {
    ExMat::new(rows).unwrap()
}

fn rank2(eta: i64) -> AlgCtx {
    AlgCtx::plain(exmat(vec![vec![0, eta], vec![-eta, 0]]))
}

#[test]
fn coeff_arithmetic_and_units() {
    let a = QCoeff::q_pow(2).add(&QCoeff::from_rational(rational(1, 3)));
    let b = QCoeff::q_pow(-1);
    let prod = a.mul(&b);
    let expect = QCoeff::q_pow(1).add(&QCoeff::monomial(-1, 0, rational(1, 3)));
    assert_eq!(prod, expect);
    assert!(b.as_unit().is_some());
    assert!(a.as_unit().is_none());
    assert!(matches!(a.inv(), Err(QuantumError::CoeffNotUnit)));
    assert_eq!(b.inv().unwrap(), QCoeff::q_pow(1));
    assert_eq!(a.eval_q1(), rational(4, 3));
    assert_eq!(a.sub(&a), QCoeff::zero());
    assert!(a.sub(&a).is_zero());
}

#[test]
fn coeff_slot_operations() {
    let c = QCoeff::q_pow(3).add(&QCoeff::qstar_pow(2));
    assert!(c.uses_star());
    assert_eq!(c.swap_slots(), QCoeff::qstar_pow(3).add(&QCoeff::q_pow(2)));
    assert_eq!(c.swap_slots().swap_slots(), c);
    let plain = QCoeff::q_pow(3);
    assert_eq!(plain.subst_q_inv(), QCoeff::q_pow(-3));
    assert!(!plain.uses_star());
}

#[test]
fn qrat_field_operations() {
    let q = QRat::q_pow(1);
    let c1 = q.div(&QRat::q_pow(2).sub(&QRat::one())).unwrap();
    assert_eq!(
        c1.mul(&QRat::q_pow(2).sub(&QRat::one())),
        QRat::q_pow(1)
    );
    let back = c1.inv().unwrap().inv().unwrap();
    assert_eq!(back, c1);
    assert_eq!(c1.subst_q_inv().subst_q_inv(), c1);
    let pole = QRat::one().div(&QRat::q_pow(1).sub(&QRat::one())).unwrap();
    assert!(matches!(pole.eval_q1(), Err(QuantumError::PoleAtOne)));
    let fine = QRat::q_pow(3).add(&QRat::from_rational(rational(1, 2)));
    assert_eq!(fine.eval_q1().unwrap(), rational(3, 2));
}

#[test]
fn generator_product_orders_differ_by_q_powers() {
    let ctx = rank2(1);
    let x1 = QElem::generator(ctx.clone(), 0).unwrap();
    let x2 = QElem::generator(ctx.clone(), 1).unwrap();
    let fwd = q_mul(&x1, &x2).unwrap();
    let bwd = q_mul(&x2, &x1).unwrap();
    assert_eq!(
        fwd,
        QElem::monomial(ctx.clone(), vec![1, 1], QCoeff::q_pow(1)).unwrap()
    );
    assert_eq!(
        bwd,
        QElem::monomial(ctx.clone(), vec![1, 1], QCoeff::q_pow(-1)).unwrap()
    );
    assert_eq!(fwd, bwd.scale(&QCoeff::q_pow(2)));
}

#[test]
fn one_is_neutral_and_binomials_cancel() {
    let ctx = rank2(1);
    let a = q_mul(
        &QElem::generator(ctx.clone(), 0).unwrap(),
        &QElem::binomial(ctx.clone(), 1, -1, -1).unwrap(),
    )
    .unwrap();
    assert_eq!(q_mul(&a, &QElem::one(ctx.clone())).unwrap(), a);
    assert_eq!(q_mul(&QElem::one(ctx.clone()), &a).unwrap(), a);
    let b = QElem::binomial(ctx.clone(), 0, 3, 1).unwrap();
    let binv = QElem::binomial(ctx.clone(), 0, 3, -1).unwrap();
    assert!(q_mul(&b, &binv).unwrap().is_one());
    assert!(q_mul(&binv, &b).unwrap().is_one());
    assert_eq!(b.inv().unwrap(), binv);
}

#[test]
fn monomial_inverse_roundtrip() {
    let ctx = rank2(1);
    let m = QElem::monomial(ctx.clone(), vec![2, -3], QCoeff::q_pow(5)).unwrap();
    let minv = m.inv().unwrap();
    assert!(q_mul(&m, &minv).unwrap().is_one());
    assert!(q_mul(&minv, &m).unwrap().is_one());
}

#[test]
fn word_inverse_of_mixed_word() {
    let ctx = rank2(-2);
    let w = q_mul(
        &q_mul(
            &QElem::binomial(ctx.clone(), 1, 1, 1).unwrap(),
            &QElem::binomial(ctx.clone(), 1, 3, 1).unwrap(),
        )
        .unwrap(),
        &QElem::monomial(ctx.clone(), vec![1, -2], QCoeff::q_pow(-1)).unwrap(),
    )
    .unwrap();
    let winv = w.inv().unwrap();
    assert!(q_mul(&w, &winv).unwrap().is_one());
    assert!(q_mul(&winv, &w).unwrap().is_one());
}

#[test]
fn sums_are_not_invertible() {
    let ctx = rank2(1);
    let s = QElem::generator(ctx.clone(), 0)
        .unwrap()
        .add(&QElem::one(ctx.clone()))
        .unwrap();
    assert!(matches!(s.inv(), Err(QuantumError::NonInvertible)));
}

#[test]
fn addition_merges_and_cancels() {
    let ctx = rank2(1);
    let x = QElem::generator(ctx.clone(), 0).unwrap();
    let twice = x.add(&x).unwrap();
    assert_eq!(
        twice,
        QElem::monomial(ctx.clone(), vec![1, 0], QCoeff::from_rational(rational(2, 1))).unwrap()
    );
    assert!(x.sub(&x).unwrap().is_zero());
    let zero = QElem::zero(ctx.clone());
    assert_eq!(x.add(&zero).unwrap(), x);
}

#[test]
fn products_across_contexts_are_rejected() {
    let a = QElem::one(rank2(1));
    let b = QElem::one(rank2(2));
    assert!(matches!(
        q_mul(&a, &b),
        Err(QuantumError::ContextMismatch)
    ));
    assert!(matches!(a.add(&b), Err(QuantumError::ContextMismatch)));
}

#[test]
fn distributivity_on_a_concrete_triple() {
    let ctx = rank2(1);
    let x = QElem::generator(ctx.clone(), 0).unwrap();
    let y = QElem::generator(ctx.clone(), 1).unwrap();
    let b = QElem::binomial(ctx.clone(), 1, -1, -1).unwrap();
    let s = y.add(&b).unwrap();
    let lhs = q_mul(&x, &s).unwrap();
    let rhs = q_mul(&x, &y).unwrap().add(&q_mul(&x, &b).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn star_on_each_coefficient_ring() {
    let ctx = rank2(1);
    let w = q_mul(
        &QElem::binomial(ctx.clone(), 1, 2, 1).unwrap(),
        &QElem::monomial(ctx.clone(), vec![1, 1], QCoeff::q_pow(3)).unwrap(),
    )
    .unwrap();

    let minus = w.star(Lambda::MinusOne).unwrap();
    assert_eq!(minus, w);

    let plus = w.star(Lambda::PlusOne).unwrap();
    assert_eq!(plus.ctx().scale(), -1);
    let back = plus.star(Lambda::PlusOne).unwrap();
    assert_eq!(back, w);

    let zero = w.star(Lambda::Zero).unwrap();
    assert!(zero
        .words()
        .iter()
        .all(|wd| wd.mono().coeff().uses_star() || wd.mono().coeff().is_one()));
    let back = zero.star(Lambda::Zero).unwrap();
    assert_eq!(back, w);
}

#[test]
fn starred_coefficients_are_barred_from_real_and_complex_rings() {
    let ctx = rank2(1);
    let c = QCoeff::qstar_pow(1);
    let x = QElem::monomial(ctx, vec![1, 0], c).unwrap();
    assert!(matches!(
        x.star(Lambda::MinusOne),
        Err(QuantumError::StarredSlotUnavailable)
    ));
    assert!(matches!(
        x.star(Lambda::PlusOne),
        Err(QuantumError::StarredSlotUnavailable)
    ));
    assert!(x.star(Lambda::Zero).is_ok());
}

fn small_skew(rank: std::ops::Range<usize>) -> impl Strategy<Value = ExMat> {
    rank.prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().unwrap();
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            ExMat::new(rows).unwrap()
        })
    })
}

fn small_exps(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, n)
}

fn small_coeff() -> impl Strategy<Value = QCoeff> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(m, num, den_sel)| {
        let den = if den_sel == 0 { 1 } else { den_sel.abs() };
        QCoeff::monomial(m, 0, rational(num, den))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_products_associate(
        e in small_skew(2..4),
        picks in proptest::collection::vec(small_exps(3), 3),
        coeffs in proptest::collection::vec(small_coeff(), 3),
    ) {
        let n = e.rank();
        let ctx = AlgCtx::plain(e);
        let mk = |exps: &Vec<i64>, c: &QCoeff| {
            QElem::monomial(ctx.clone(), exps[..n].to_vec(), c.clone()).unwrap()
        };
        let a = mk(&picks[0], &coeffs[0]);
        let b = mk(&picks[1], &coeffs[1]);
        let c = mk(&picks[2], &coeffs[2]);
        let lhs = q_mul(&q_mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = q_mul(&a, &q_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_a_multiplicative_involution(
        e in small_skew(2..4),
        exps_a in small_exps(3),
        exps_b in small_exps(3),
        ma in -3i64..=3,
        mb in -3i64..=3,
        ka in 0usize..3,
        kb in 0usize..3,
    ) {
        let n = e.rank();
        let ctx = AlgCtx::plain(e);
        let a = q_mul(
            &QElem::binomial(ctx.clone(), ka % n, ma, 1).unwrap(),
            &QElem::monomial(ctx.clone(), exps_a[..n].to_vec(), QCoeff::q_pow(ma)).unwrap(),
        ).unwrap();
        let b = q_mul(
            &QElem::binomial(ctx.clone(), kb % n, mb, -1).unwrap(),
            &QElem::monomial(ctx.clone(), exps_b[..n].to_vec(), QCoeff::q_pow(mb)).unwrap(),
        ).unwrap();
        for lam in [Lambda::MinusOne, Lambda::Zero, Lambda::PlusOne] {
            let sa = a.star(lam).unwrap();
            let sb = b.star(lam).unwrap();
            prop_assert_eq!(sa.star(lam).unwrap(), a.clone());
            let prod_then_star = q_mul(&a, &b).unwrap().star(lam).unwrap();
            let star_then_prod = q_mul(&sa, &sb).unwrap();
            prop_assert_eq!(prod_then_star, star_then_prod);
        }
    }

    #[test]
    fn inverses_cancel_for_random_words(
        e in small_skew(2..4),
        exps in small_exps(3),
        m in -3i64..=3,
        k in 0usize..3,
    ) {
        let n = e.rank();
        let ctx = AlgCtx::plain(e);
        let w = q_mul(
            &QElem::binomial(ctx.clone(), k % n, m, 1).unwrap(),
            &QElem::monomial(ctx.clone(), exps[..n].to_vec(), QCoeff::q_pow(m)).unwrap(),
        ).unwrap();
        let winv = w.inv().unwrap();
        prop_assert!(q_mul(&w, &winv).unwrap().is_one());
        prop_assert!(q_mul(&winv, &w).unwrap().is_one());
    }
}

#[test]
fn rational_helper_reduces() {
    assert_eq!(rational(2, 4), rational(1, 2));
    assert!(rational(0, 5).is_zero());
    assert!(rational(3, 3).is_one());
    let _: BigRational = rational(1, 7);
}
