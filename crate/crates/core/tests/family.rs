mod common;

use common::{from_poly, substituted_degree};
use gradus_core::contexts;
use gradus_core::degrees::{check_degree_properties, DegreeLike};
use gradus_core::family::{
    extension_scan, instantiate_family, integral_closure_check, integrality_scan, pullback_eta,
    EtaSource, FamilySpec,
};
use gradus_core::parse::parse_poly;
use gradus_core::sample::PolySampler;
use proptest::prelude::*;

fn spec(json: &str) -> FamilySpec {
    FamilySpec::from_json(json).unwrap()
}

fn members() -> Vec<FamilySpec> {
    vec![
        FamilySpec::main_example(),
        spec(r#"{"p":3,"coeffs":{"3":1,"-2":1},"w1":2,"w2":5}"#),
        spec(r#"{"p":7,"coeffs":{"7":2,"1":-1,"-3":"1/2"},"w1":2,"w2":9}"#),
        spec(r#"{"p":5,"coeffs":{"5":1,"2":3,"-4":1},"w1":2,"w2":9}"#),
    ]
}

#[test]
fn members_satisfy_the_semidegree_suite() {
    let xy = PolySampler::new(contexts::xy(), 5, 4);
    for s in members() {
        let inst = instantiate_family(&s).unwrap();
        assert!(!inst.degenerate);
        for d in [&inst.delta1, &inst.delta2] {
            let r = check_degree_properties(d, &xy, 60, 7).unwrap();
            assert!(r.passed(), "{}", s.to_json());
        }
        let r = check_degree_properties(&inst.delta, &xy, 60, 7).unwrap();
        assert!(r.p1_violations.is_empty() && r.p2_violations.is_empty());
    }
}

#[test]
fn members_extend_to_the_pullback() {
    for s in members() {
        let inst = instantiate_family(&s).unwrap();
        let eta = EtaSource::for_instance(&inst);
        assert!(extension_scan(&inst, &eta, 60, 4, 3).unwrap().passed());
        assert!(integrality_scan(&inst, &eta, 40, 4, 3).unwrap().passed());
    }
}

#[test]
fn family_deltas_match_the_binomial_oracle() {
    for s in members() {
        let inst = instantiate_family(&s).unwrap();
        let shift = from_poly(&s.shift().unwrap());
        let neg_shift = from_poly(&gradus_core::family::conjugate_poly(&s.shift().unwrap()).unwrap());
        for text in ["x", "y", "y^2 - x*y + 3", "x^3*y - 2"] {
            let f = parse_poly(text, &contexts::xy()).unwrap();
            let want = substituted_degree(&from_poly(&f), &shift, s.w1, s.w2);
            assert_eq!(inst.delta1.degree(&f).unwrap().finite(), want);
            let want = substituted_degree(&from_poly(&f), &neg_shift, s.w1, s.w2);
            assert_eq!(inst.delta2.degree(&f).unwrap().finite(), want);
        }
    }
}

#[test]
fn invalid_members_are_rejected_with_reasons() {
    for json in [
        r#"{"p":4,"coeffs":{"4":1,"-2":1},"w1":1,"w2":3}"#,
        r#"{"p":5,"coeffs":{"5":1,"-1":1},"w1":1,"w2":3}"#,
        r#"{"p":5,"coeffs":{"5":1,"-2":1},"w1":1,"w2":7}"#,
        r#"{"p":5,"coeffs":{"5":0,"-2":1},"w1":1,"w2":3}"#,
        r#"{"p":5,"coeffs":{"5":"x","-2":1},"w1":1,"w2":3}"#,
    ] {
        let errs = instantiate_family(&spec(json)).unwrap_err();
        assert!(!errs.is_empty(), "{json}");
    }
}

fn arb_xy() -> impl Strategy<Value = gradus_core::Poly> {
    prop::collection::vec(((0i32..4, 0i32..4), -4i64..5), 1..5)
        .prop_map(|t| {
            let text: Vec<String> = t.iter().map(|((a, b), c)| format!("{c}*x^{a}*y^{b}")).collect();
            parse_poly(&text.join(" + "), &contexts::xy()).unwrap()
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugate_coefficients_are_integral(f in arb_xy()) {
        let inst = instantiate_family(&FamilySpec::main_example()).unwrap();
        let r = integral_closure_check(&f, &inst, &inst.pullback_eta()).unwrap();
        prop_assert!(r.passed, "{:?}", r);
        let series = gradus_core::degrees::main_example::eta();
        let r = integral_closure_check(&f, &inst, &series).unwrap();
        prop_assert!(r.passed, "{:?}", r);
    }

    #[test]
    fn both_eta_routes_agree(a in 0i32..4, b in 0i32..4, c in -3i64..4) {
        let h = parse_poly(&format!("u^{a}*v^{b} + {c}*v^2 - u"), &contexts::uv()).unwrap();
        prop_assume!(!h.is_zero());
        prop_assert!(pullback_eta(&h).is_ok());
    }
}
