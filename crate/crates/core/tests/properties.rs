mod support;

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use toric_degen::parser::parse_poly;
use toric_degen::valuation::value_of;
use toric_degen::{Field, Monomial, Polynomial, Value, WeightedRing};

use support::gen::{poly, terms};

fn ring3() -> Arc<WeightedRing> {
    WeightedRing::with_weights(
        Field::Rational,
        &[("x", Value::int(4)), ("y", Value::int(6)), ("u2", Value::ratio(31, 2))],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn monomial_order_is_admissible(
        a in prop::collection::vec(0u32..6, 3),
        b in prop::collection::vec(0u32..6, 3),
        c in prop::collection::vec(0u32..6, 3),
    ) {
        let r = ring3();
        let (a, b, c) = (Monomial(a), Monomial(b), Monomial(c));
        let ab = r.cmp_monomials(&a, &b);
        prop_assert_eq!(ab, r.cmp_monomials(&a.mul(&c), &b.mul(&c)));
        prop_assert_eq!(ab, r.cmp_monomials(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_ne!(r.cmp_monomials(&Monomial::one(3), &a.mul(&Monomial::var(3, 0, 1))), Ordering::Greater);
    }

    #[test]
    fn initial_forms_multiply(f in terms(3, 3, 5), g in terms(3, 3, 5)) {
        let r = ring3();
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = (&f * &g).initial_form().unwrap();
        let rhs = &f.initial_form().unwrap() * &g.initial_form().unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&f * &g).weight(), &f.weight() + &g.weight());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(t in terms(3, 4, 6)) {
        let r = ring3();
        let p = poly(&r, &t);
        let back = parse_poly(&p.to_string(), &r).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn print_then_parse_over_a_prime_field(t in terms(2, 5, 6)) {
        let r = WeightedRing::with_weights(Field::Prime(11), &[("x", Value::int(2)), ("y", Value::int(3))]).unwrap();
        let p = poly(&r, &t);
        prop_assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
    }
}

fn law_cases(name: &str, cases: u32) {
    let p = support::problem(name);
    let system = p.system.clone().certify().unwrap();
    let ring = system.ring().clone();
    let n = ring.nvars();
    let eqs = system.polynomials();
    let nu = |f: &Polynomial| value_of(f, &system).unwrap().value;
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(cases));
    runner
        .run(&(terms(n, 3, 4), terms(n, 3, 4), terms(n, 2, 3), 0..eqs.len().max(1)), |(f, g, h, k)| {
            let (f, g, h) = (poly(&ring, &f), poly(&ring, &g), poly(&ring, &h));
            let (vf, vg) = (nu(&f), nu(&g));
            prop_assert_eq!(nu(&(&f * &g)), &vf + &vg);
            let vs = nu(&(&f + &g));
            prop_assert!(vs.try_cmp(&vf.clone().min(vg.clone())).unwrap() != Ordering::Less);
            if let Some(e) = eqs.get(k) {
                prop_assert_eq!(nu(&(&f + &(&h * e))), vf.clone());
            }
            Ok(())
        })
        .unwrap_or_else(|e| panic!("{name}: {e}"));
}

#[test]
fn valuation_laws_s7() {
    law_cases("s7.json", 100);
}

#[test]
fn valuation_laws_s7_mod_101() {
    law_cases("s7_mod101.json", 100);
}

#[test]
fn valuation_laws_cusp() {
    law_cases("cusp23.json", 100);
}

#[test]
fn valuation_laws_rank_two() {
    law_cases("rank2.json", 100);
}

#[test]
fn valuation_laws_branch() {
    law_cases("branch.json", 100);
}
