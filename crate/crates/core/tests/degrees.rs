mod common;

use common::{dense, from_poly, substituted_degree};
use gradus_core::contexts;
use gradus_core::degrees::main_example::{delta, delta1, delta2, eta};
use gradus_core::degrees::{check_degree_properties, DegreeFunction, DegreeLike};
use gradus_core::family::{conjugate_poly, pull_to_xy};
use gradus_core::parse::parse_poly;
use gradus_core::sample::PolySampler;
use gradus_core::{Degree, Monomial, Poly, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_in(ctx: gradus_core::Ctx, max_exp: i32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0..=max_exp, 0..=max_exp), -9i64..10, 1i64..4), 1..5).prop_map(
        move |terms| {
            Poly::from_terms(
                &ctx,
                terms.into_iter().map(|((a, b), n, d)| {
                    (
                        Monomial(vec![a, b]),
                        Rational::new(BigInt::from(n), BigInt::from(d)),
                    )
                }),
            )
            .unwrap()
        },
    )
}

fn arb_xy() -> impl Strategy<Value = Poly> {
    arb_in(contexts::xy(), 5).prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_uv() -> impl Strategy<Value = Poly> {
    arb_in(contexts::uv(), 4).prop_filter("nonzero", |p| !p.is_zero())
}

fn fin(d: Degree) -> i64 {
    d.finite().expect("nonzero input has a finite degree")
}

#[test]
fn evaluator_matches_the_binomial_oracle_on_examples() {
    let shift1 = dense(&[(&[5, 0], 1), (&[-2, 0], 1)]);
    let shift2 = dense(&[(&[5, 0], -1), (&[-2, 0], 1)]);
    for text in ["x", "y", "x^2*(y - x^5) - 1", "y - x^5", "y^3*x - 4*x^7 + 2"] {
        let f = parse_poly(text, &contexts::xy()).unwrap();
        let want1 = substituted_degree(&from_poly(&f), &shift1, 1, 3);
        let want2 = substituted_degree(&from_poly(&f), &shift2, 1, 3);
        assert_eq!(delta1().degree(&f).unwrap().finite(), want1, "{text}");
        assert_eq!(delta2().degree(&f).unwrap().finite(), want2, "{text}");
    }
}

#[test]
fn property_reports_on_fixed_seed() {
    let xy = PolySampler::new(contexts::xy(), 6, 4);
    for d in [delta1(), delta2()] {
        let r = check_degree_properties(&d, &xy, 200, 42).unwrap();
        assert!(r.passed() && r.strict_subadditivity.is_empty());
    }
    let r = check_degree_properties(&delta(), &xy, 200, 42).unwrap();
    assert!(r.p1_violations.is_empty() && r.p2_violations.is_empty());
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["seed"], 42);
    assert_eq!(json["count"], 200);
    let r = check_degree_properties(&eta(), &PolySampler::new(contexts::uv(), 6, 4), 200, 42)
        .unwrap();
    assert!(r.passed() && r.strict_subadditivity.is_empty());
}

#[test]
fn constants_sum_to_degree_zero() {
    let one = Poly::one(&contexts::xy());
    let two = &one + &one;
    for d in [
        DegreeFunction::Substituted(delta1()),
        DegreeFunction::Max(delta()),
    ] {
        assert_eq!(d.degree(&two).unwrap(), Degree::Finite(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substituted_degrees_are_semidegrees(f in arb_xy(), g in arb_xy()) {
        for d in [delta1(), delta2()] {
            let fg = &f * &g;
            prop_assert_eq!(d.degree(&fg).unwrap(), d.degree(&f).unwrap() + d.degree(&g).unwrap());
        }
    }

    #[test]
    fn negative_delta_is_a_discrete_valuation(f in arb_xy(), g in arb_xy()) {
        let d = delta1();
        let v = |p: &Poly| -fin(d.degree(p).unwrap());
        prop_assert_eq!(v(&(&f * &g)), v(&f) + v(&g));
        let s = &f + &g;
        if !s.is_zero() {
            prop_assert!(v(&s) >= v(&f).min(v(&g)));
        }
    }

    #[test]
    fn max_is_degree_like(f in arb_xy(), g in arb_xy()) {
        let d = delta();
        let (df, dg) = (d.degree(&f).unwrap(), d.degree(&g).unwrap());
        prop_assert!(d.degree(&(&f + &g)).unwrap() <= df.max(dg));
        prop_assert!(d.degree(&(&f * &g)).unwrap() <= df + dg);
    }

    #[test]
    fn eta_is_a_semidegree(f in arb_uv(), g in arb_uv()) {
        let e = eta();
        prop_assert_eq!(e.degree(&(&f * &g)).unwrap(), e.degree(&f).unwrap() + e.degree(&g).unwrap());
    }

    #[test]
    fn both_deltas_extend_eta(h in arb_uv()) {
        let f = pull_to_xy(&h).unwrap();
        let e = eta().degree(&h).unwrap();
        prop_assert_eq!(delta1().degree(&f).unwrap(), e);
        prop_assert_eq!(delta2().degree(&f).unwrap(), e);
    }

    #[test]
    fn conjugation_swaps_the_deltas(f in arb_xy()) {
        let fbar = conjugate_poly(&f).unwrap();
        prop_assert_eq!(delta2().degree(&f).unwrap(), delta1().degree(&fbar).unwrap());
    }

    #[test]
    fn specs_survive_json(wx in 1i64..5, wy in 1i64..5, a in -3i32..0, b in 1i32..6) {
        let shift = Poly::from_terms(&contexts::xy(), [
            (Monomial(vec![a, 0]), Rational::from_integer(1.into())),
            (Monomial(vec![b, 0]), Rational::from_integer((-2).into())),
        ]).unwrap();
        let d = gradus_core::degrees::SubstitutedWeightedDegree::new(wx, wy, shift).unwrap();
        let f = DegreeFunction::Substituted(d);
        prop_assert_eq!(DegreeFunction::from_json(&f.to_json()).unwrap(), f);
    }
}
