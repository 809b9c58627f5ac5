use classical_x::{ClassicalError, RatExpr};
use num::{BigInt, BigRational};
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn parse2(s: &str) -> RatExpr {
    RatExpr::parse(s, 2).unwrap()
}

#[test]
fn canonical_string_matches_expected_layout() {
    let expr = RatExpr::one(2)
        .add(&RatExpr::gen(2, 0))
        .div(&RatExpr::gen(2, 1).pow(2).unwrap())
        .unwrap();
    assert_eq!(expr.to_string(), "(1+Z1)/(Z2^2)");
}

#[test]
fn polynomials_print_without_denominator() {
    let expr = RatExpr::gen(3, 0)
        .mul(&RatExpr::gen(3, 1))
        .add(&RatExpr::from_int(3, 2));
    assert_eq!(expr.to_string(), "2+Z1*Z2");
}

#[test]
fn rational_coefficients_round_trip() {
    let expr = RatExpr::constant(1, BigRational::new(BigInt::from(3), BigInt::from(2)))
        .mul(&RatExpr::gen(1, 0))
        .add(&RatExpr::one(1));
    assert_eq!(expr.to_string(), "1+3/2*Z1");
    assert_eq!(RatExpr::parse("1+3/2*Z1", 1).unwrap(), expr);
}

#[test]
fn gcd_reduction_cancels_common_factors() {
    let squared = parse2("(1+Z1)*(1+Z1)");
    let linear = parse2("1+Z1");
    assert_eq!(squared.div(&linear).unwrap().to_string(), "1+Z1");

    let mixed = parse2("(Z1*Z2+Z1)/Z1");
    assert_eq!(mixed.to_string(), "1+Z2");

    let cross = parse2("((1+Z1)*(1+Z2))/((1+Z1)*Z2)");
    assert_eq!(cross.to_string(), "(1+Z2)/(Z2)");
}

#[test]
fn laurent_monomials_normalize_into_the_denominator() {
    let m = RatExpr::monomial(2, &[-2, 1]);
    assert_eq!(m.to_string(), "(Z2)/(Z1^2)");
    assert!(m.is_laurent());
    assert!(RatExpr::monomial(2, &[3, 0]).is_laurent());
    assert!(!RatExpr::parse("1/(1+Z1)", 2).unwrap().is_laurent());
}

#[test]
fn denominator_scaling_is_monic() {
    let expr = parse2("(2+2*Z1)/(2*Z2+4)");
    assert_eq!(expr.to_string(), "(1+Z1)/(2+Z2)");
}

#[test]
fn zero_denominator_is_rejected() {
    assert!(matches!(
        RatExpr::gen(2, 0).div(&RatExpr::zero(2)),
        Err(ClassicalError::DivisionByZero)
    ));
    assert!(matches!(
        RatExpr::zero(2).inv(),
        Err(ClassicalError::DivisionByZero)
    ));
}

#[test]
fn ell_marker_prints_and_parses() {
    let marked = RatExpr::gen(2, 0).mul(&RatExpr::gen(2, 1)).with_ell(true);
    assert_eq!(marked.to_string(), "l*Z1*Z2");
    assert_eq!(parse2("l*Z1*Z2"), marked);

    let sum = parse2("l*(1+Z1)");
    assert_eq!(sum, RatExpr::one(2).add(&RatExpr::gen(2, 0)).with_ell(true));
    assert_eq!(sum.to_string(), "l*(1+Z1)");

    assert_eq!(parse2("l").to_string(), "l");
}

#[test]
fn ell_squared_is_refused_by_the_parser() {
    assert!(matches!(
        RatExpr::parse("l*l", 1),
        Err(ClassicalError::Parse(_))
    ));
    assert!(matches!(
        RatExpr::parse("l+1", 1),
        Err(ClassicalError::Parse(_))
    ));
}

#[test]
fn zero_with_ell_collapses_to_plain_zero() {
    let z = RatExpr::zero(2).with_ell(true);
    assert!(!z.has_ell());
    assert_eq!(z, RatExpr::zero(2));
}

#[test]
fn parser_rejects_out_of_range_generators() {
    assert!(matches!(
        RatExpr::parse("Z3", 2),
        Err(ClassicalError::Parse(_))
    ));
    assert!(matches!(
        RatExpr::parse("Z0", 2),
        Err(ClassicalError::Parse(_))
    ));
}

#[test]
fn serde_uses_the_canonical_string() {
    let expr = parse2("(1+Z1)/(Z2^2)");
    let json = serde_json::to_string(&expr).unwrap();
    assert_eq!(json, "\"(1+Z1)/(Z2^2)\"");
    let back: RatExpr = serde_json::from_str(&json).unwrap();
    assert_eq!(back, expr);
}

#[test]
fn negative_exponents_parse_as_reciprocals() {
    assert_eq!(parse2("Z1^-2"), RatExpr::monomial(2, &[-2, 0]));
    assert_eq!(parse2("(1+Z1)^-1"), parse2("1/(1+Z1)"));
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn small_poly(nvars: usize) -> impl Strategy<Value = RatExpr> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, nvars), small_rational()), 1..4)
        .prop_map(move |terms| {
            let mut acc = RatExpr::zero(nvars);
            for (exps, c) in terms {
                let mono =
                    RatExpr::monomial(nvars, &exps.iter().map(|&e| e as i64).collect::<Vec<_>>());
                acc = acc.add(&mono.mul(&RatExpr::constant(nvars, c)));
            }
            acc
        })
}

fn small_ratexpr(nvars: usize) -> impl Strategy<Value = RatExpr> {
    (small_poly(nvars), small_poly(nvars)).prop_filter_map("nonzero denominator", |(a, b)| {
        if b.is_zero() {
            None
        } else {
            Some(a.div(&b).unwrap())
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_associative_and_commutative(
        a in small_ratexpr(2), b in small_ratexpr(2), c in small_ratexpr(2)
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_distributes_over_addition(
        a in small_ratexpr(2), b in small_ratexpr(2), c in small_ratexpr(2)
    ) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn subtraction_of_self_is_zero(a in small_ratexpr(2)) {
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in small_ratexpr(2), b in small_ratexpr(2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }

    #[test]
    fn display_parse_round_trips(a in small_ratexpr(3)) {
        let text = a.to_string();
        prop_assert_eq!(RatExpr::parse(&text, 3).unwrap(), a);
    }

    #[test]
    fn derivative_satisfies_the_product_rule(a in small_ratexpr(2), b in small_ratexpr(2)) {
        let lhs = a.mul(&b).partial_derivative(0);
        let rhs = a.partial_derivative(0).mul(&b).add(&a.mul(&b.partial_derivative(0)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_powers_compose(a in small_ratexpr(2), e1 in 0i64..4, e2 in 0i64..4) {
        prop_assert_eq!(
            a.pow(e1).unwrap().mul(&a.pow(e2).unwrap()),
            a.pow(e1 + e2).unwrap()
        );
    }
}

#[test]
fn constant_one_constructor_matches_parse() {
    assert_eq!(RatExpr::one(2), parse2("1"));
    assert_eq!(RatExpr::from_int(2, -7), parse2("-7"));
    assert_eq!(q(3), BigRational::from_integer(BigInt::from(3)));
}
