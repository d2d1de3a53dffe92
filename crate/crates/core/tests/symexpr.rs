mod common;

use proptest::prelude::*;

use pnverify_core::symexpr::{parse_expr, rat, ChartSpace, Poly, SymError};

fn xy() -> std::sync::Arc<ChartSpace> {
    ChartSpace::new(&["x1", "x2"]).unwrap()
}

#[test]
fn zero_parses_to_empty_term_map() {
    let p = parse_expr("0", &xy()).unwrap();
    assert!(p.is_zero());
    assert_eq!(p.num_terms(), 0);
}

#[test]
fn expands_product_of_square() {
    let s = xy();
    let p = parse_expr("x1*(x2 + 3/2)^2", &s).unwrap();
    assert_eq!(p.num_terms(), 3);
    assert_eq!(p.coefficient(&[1, 2]), rat(1, 1));
    assert_eq!(p.coefficient(&[1, 1]), rat(3, 1));
    assert_eq!(p.coefficient(&[1, 0]), rat(9, 4));
    assert_eq!(p.to_string(), "x1*x2^2 + 3*x1*x2 + 9/4*x1");
}

#[test]
fn out_of_chart_name_is_rejected() {
    match parse_expr("x3", &xy()) {
        Err(SymError::UnknownIdentifier { name, pos }) => {
            assert_eq!(name, "x3");
            assert_eq!(pos, 1);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn bad_exponents_and_syntax_are_rejected() {
    let s = xy();
    assert!(matches!(parse_expr("x1^x2", &s), Err(SymError::BadExponent { .. })));
    assert!(matches!(parse_expr("x1^(2)", &s), Err(SymError::BadExponent { .. })));
    assert!(matches!(parse_expr("x1 +", &s), Err(SymError::Syntax { .. })));
    assert!(matches!(parse_expr("(x1", &s), Err(SymError::Syntax { .. })));
    assert!(matches!(parse_expr("1/0", &s), Err(SymError::Syntax { .. })));
}

#[test]
fn arithmetic_examples() {
    let s = xy();
    let e = |t: &str| parse_expr(t, &s).unwrap();
    let p = e("3*x1*x2 - 1/7");
    assert_eq!(&p + &Poly::zero(&s), p);
    assert_eq!(&e("x1 + 1") * &e("x1 - 1"), e("x1^2 - 1"));
    let q = p.clone();
    let d = &p - &q;
    assert!(d.is_zero() && d.num_terms() == 0);
    let other = ChartSpace::new(&["u", "v"]).unwrap();
    assert!(matches!(p.try_add(&Poly::one(&other)), Err(SymError::ChartMismatch { .. })));
}

#[test]
fn partial_examples() {
    let s = xy();
    let e = |t: &str| parse_expr(t, &s).unwrap();
    assert!(e("5/3").partial(0).unwrap().is_zero());
    assert_eq!(e("x1^2*x2").partial(0).unwrap(), e("2*x1*x2"));
    assert!(matches!(e("x1").partial(2), Err(SymError::IndexOutOfRange { .. })));
}

#[test]
fn eval_examples() {
    let s = xy();
    let e = |t: &str| parse_expr(t, &s).unwrap();
    assert_eq!(e("x1 + x2").eval(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(5, 6));
    assert_eq!(Poly::zero(&s).eval(&[rat(7, 1), rat(-2, 5)]).unwrap(), rat(0, 1));
    assert!(matches!(e("x1").eval(&[rat(1, 1)]), Err(SymError::LengthMismatch { .. })));
}

#[test]
fn ring_axioms_on_random_triples() {
    common::ring_axioms(1, 100).unwrap();
}

#[test]
fn leibniz_rule() {
    common::leibniz(2, 100).unwrap();
}

#[test]
fn mixed_partials_commute() {
    common::clairaut(3, 50).unwrap();
}

#[test]
fn parser_agrees_with_tree_walking_evaluator() {
    common::parse_eval_agreement(4, 100).unwrap();
}

#[test]
fn partials_agree_with_central_differences() {
    common::partial_matches_finite_difference(5, 100).unwrap();
}

proptest! {
    #[test]
    fn printing_is_a_parse_fixed_point(
        terms in prop::collection::vec(((0u32..4, 0u32..4), -20i64..20, 1i64..6), 0..6)
    ) {
        let s = xy();
        let p = Poly::from_terms(&s, terms.into_iter().map(|((a, b), n, d)| (vec![a, b], rat(n, d)))).unwrap();
        let printed = p.to_string();
        let q = parse_expr(&printed, &s).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.to_string(), printed);
    }

    #[test]
    fn whitespace_is_insignificant(a in -9i64..9, b in 1i64..9) {
        let s = xy();
        let tight = parse_expr(&format!("{a}/{b}*x1^2-x2"), &s).unwrap();
        let loose = parse_expr(&format!("  {a} / {b} *  x1 ^ 2 -  x2 "), &s).unwrap();
        prop_assert_eq!(tight, loose);
    }
}
