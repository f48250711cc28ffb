use gradus_core::contexts;
use gradus_core::degrees::DegreeLike;
use gradus_core::lifting::SContext;
use gradus_core::parse::parse_poly;
use gradus_core::{Monomial, Poly, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_s() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0i32..4, 0i32..3, 0i32..3, 0i32..3), -5i64..6), 1..5).prop_map(
        |terms| {
            Poly::from_terms(
                &contexts::s_ring(),
                terms.into_iter().map(|((a, b, c, d), n)| {
                    (Monomial(vec![a, b, c, d]), Rational::from_integer(BigInt::from(n)))
                }),
            )
            .unwrap()
        },
    )
}

fn arb_xy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0i32..5, 0i32..4), -5i64..6), 1..5)
        .prop_map(|terms| {
            Poly::from_terms(
                &contexts::xy(),
                terms.into_iter().map(|((a, b), n)| {
                    (Monomial(vec![a, b]), Rational::from_integer(BigInt::from(n)))
                }),
            )
            .unwrap()
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn ctxs() -> [SContext; 2] {
    [SContext::new(1).unwrap(), SContext::new(2).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn omega_bounds_delta_of_the_image(f in arb_s()) {
        for c in ctxs() {
            let image = c.apply_pi(&f).unwrap();
            prop_assert!(c.omega_degree(&f) >= c.delta().degree(&image).unwrap());
        }
    }

    #[test]
    fn membership_is_an_ideal_test(f in arb_s(), g in arb_s()) {
        for c in ctxs() {
            let g1 = &c.ideal().g1 * &f;
            let g2 = &c.ideal().g2 * &g;
            prop_assert!(c.ideal_membership(&g1).unwrap());
            prop_assert!(c.ideal_membership(&(&g1 + &g2)).unwrap());
            prop_assert!(c.ideal_membership(&(&(&g1 + &g2) * &f)).unwrap());
        }
    }

    #[test]
    fn leading_forms_of_members_decompose(a in arb_s(), b in arb_s()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        for c in ctxs() {
            let w = c.omega();
            let h = &(&a.leading_form(w).unwrap() * &c.ideal().g1)
                + &(&b.leading_form(w).unwrap() * &c.ideal().g2);
            if h.is_zero() || !h.is_homogeneous(w) {
                continue;
            }
            let (h1, h2) = c.decompose_leading(&h).unwrap();
            prop_assert_eq!(&(&h1 * &c.ideal().g1) + &(&h2 * &c.ideal().g2), h.clone());
            let (k1, k2) = c.decompose_by_linear_solve(&h, 32).unwrap();
            prop_assert_eq!(&(&k1 * &c.ideal().g1) + &(&k2 * &c.ideal().g2), h);
        }
    }

    #[test]
    fn descent_reaches_delta(f in arb_xy()) {
        for c in ctxs() {
            let lift = c.descend_lift(&f, None).unwrap();
            prop_assert_eq!(c.apply_pi(&lift).unwrap(), f.clone());
            prop_assert_eq!(c.omega_degree(&lift), c.delta().degree(&f).unwrap());
        }
    }

    #[test]
    fn descent_accepts_any_starting_lift(f in arb_xy(), junk in arb_s()) {
        let c = SContext::new(1).unwrap();
        let r = c.ring();
        let v = |n: &str| parse_poly(n, r).unwrap();
        // z2 - x^2 z1 + 1 generates part of the kernel of pi.
        let start = &v("z2 - x^2*z1 + 1") * &junk;
        let start = &start + &f.change_context(c.ring()).unwrap();
        let lift = c.descend_lift(&f, Some(&start)).unwrap();
        prop_assert_eq!(c.omega_degree(&lift), c.delta().degree(&f).unwrap());
    }
}

#[test]
fn scan_report_serializes_with_seed() {
    let c = SContext::new(1).unwrap();
    let r = c.drop_equivalence_scan(30, 6, -20..=20, 42).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
    assert_eq!(r, c.drop_equivalence_scan(30, 6, -20..=20, 42).unwrap());
}
