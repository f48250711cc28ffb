//! The parametric family of counterexamples: `f(x) = sum a_i x^i` for
//! `-p < i <= p`, shifted coordinates `y_1 = y - f(x)`, `y_2 = y - f(-x)`,
//! and the checks tying both `delta_i` to one degree on `Q[u, v]`,
//! `u = x^2`, `v = y`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::contexts;
use crate::degree::Degree;
use crate::degrees::{
    main_example, DegreeFunction, DegreeLike, MaxDegree, PuiseuxDegree, SubstitutedWeightedDegree,
};
use crate::error::{DegreeError, PolyError};
use crate::ring::{Ctx, Monomial};
use crate::sample::{sample_rng, PolySampler};
use crate::Poly;

/// A coefficient given either as a JSON integer or as a string like `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Int(i64),
    Text(String),
}

impl CoeffValue {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            CoeffValue::Int(n) => Ok(Rational::from_integer((*n).into())),
            CoeffValue::Text(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| format!("bad coefficient `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub p: i64,
    /// Exponent -> coefficient.
    pub coeffs: BTreeMap<i32, CoeffValue>,
    pub w1: i64,
    pub w2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum FamilyViolation {
    PNotOddAtLeast3 { p: i64 },
    BadCoefficient { exponent: i32, message: String },
    ExponentOutOfRange { exponent: i32 },
    LeadingCoefficientZero,
    PoleOrderTooSmall { q: i64 },
    NonPositiveWeights,
    WeightWindow { q: i64, w1: i64, w2: i64, p: i64 },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::PNotOddAtLeast3 { p } => write!(f, "p = {p} must be odd and at least 3"),
            FamilyViolation::BadCoefficient { exponent, message } => {
                write!(f, "coefficient of x^{exponent}: {message}")
            }
            FamilyViolation::ExponentOutOfRange { exponent } => {
                write!(f, "exponent {exponent} is outside [-p+1, p]")
            }
            FamilyViolation::LeadingCoefficientZero => write!(f, "a_p must be nonzero"),
            FamilyViolation::PoleOrderTooSmall { q } => {
                write!(f, "q = -ord_x(f) = {q}, but 2 <= q <= p-1 is required")
            }
            FamilyViolation::NonPositiveWeights => write!(f, "w1 and w2 must be positive"),
            FamilyViolation::WeightWindow { q, w1, w2, p } => {
                write!(f, "need {q}*{w1} < {w2} < {p}*{w1}")
            }
        }
    }
}

impl FamilySpec {
    /// The main example: `p = 5`, `f = x^5 + x^-2`, weights `(1, 3)`.
    pub fn main_example() -> Self {
        FamilySpec {
            p: 5,
            coeffs: [(-2, CoeffValue::Int(1)), (5, CoeffValue::Int(1))].into(),
            w1: 1,
            w2: 3,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DegreeError> {
        serde_json::from_str(text).map_err(|e| DegreeError::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family spec serializes")
    }

    /// Nonzero coefficients, or the exponents whose values do not parse.
    fn parsed(&self) -> (BTreeMap<i32, Rational>, Vec<FamilyViolation>) {
        let mut out = BTreeMap::new();
        let mut bad = Vec::new();
        for (&e, v) in &self.coeffs {
            match v.to_rational() {
                Ok(c) if c != Rational::from_integer(0.into()) => {
                    out.insert(e, c);
                }
                Ok(_) => {}
                Err(message) => bad.push(FamilyViolation::BadCoefficient { exponent: e, message }),
            }
        }
        (out, bad)
    }

    /// `f(x)` as an element of `Q[x, x^-1, y]`.
    pub fn shift(&self) -> Result<Poly, PolyError> {
        let ctx = contexts::xy();
        let (coeffs, _) = self.parsed();
        Poly::from_terms(
            &ctx,
            coeffs.into_iter().map(|(e, c)| (Monomial(vec![e, 0]), c)),
        )
    }
}

/// Every violated condition; empty means valid.
pub fn validate_family(spec: &FamilySpec) -> Vec<FamilyViolation> {
    let p = spec.p;
    let mut out = Vec::new();
    if p < 3 || p % 2 == 0 {
        out.push(FamilyViolation::PNotOddAtLeast3 { p });
    }
    let (coeffs, bad) = spec.parsed();
    out.extend(bad);
    for &e in coeffs.keys() {
        if (e as i64) < 1 - p || e as i64 > p {
            out.push(FamilyViolation::ExponentOutOfRange { exponent: e });
        }
    }
    if !coeffs.keys().any(|&e| e as i64 == p) {
        out.push(FamilyViolation::LeadingCoefficientZero);
    }
    let q = -coeffs.keys().next().map_or(0, |&e| e as i64);
    if q < 2 || q > p - 1 {
        out.push(FamilyViolation::PoleOrderTooSmall { q });
    }
    if spec.w1 <= 0 || spec.w2 <= 0 {
        out.push(FamilyViolation::NonPositiveWeights);
    } else if !(q * spec.w1 < spec.w2 && spec.w2 < p * spec.w1) {
        out.push(FamilyViolation::WeightWindow {
            q,
            w1: spec.w1,
            w2: spec.w2,
            p,
        });
    }
    out
}

/// `f(-x, y)`.
pub fn conjugate_poly(f: &Poly) -> Result<Poly, PolyError> {
    let f = f.change_context(&contexts::xy())?;
    let terms: Vec<(Monomial, Rational)> = f
        .terms()
        .map(|(m, c)| {
            let c = if m.0[0] % 2 == 0 { c.clone() } else { -c.clone() };
            (m.clone(), c)
        })
        .collect();
    Poly::from_terms(&contexts::xy(), terms)
}

/// A polynomial with its image under `x -> -x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatePair {
    pub f: Poly,
    pub f_bar: Poly,
}

impl ConjugatePair {
    pub fn new(f: &Poly) -> Result<Self, PolyError> {
        Ok(ConjugatePair {
            f: f.change_context(&contexts::xy())?,
            f_bar: conjugate_poly(f)?,
        })
    }

    /// `(g1, g2)` with `T^2 + g1 T + g2 = (T - f)(T - f_bar)`.
    pub fn minimal_polynomial(&self) -> (Poly, Poly) {
        (-(&self.f + &self.f_bar), &self.f * &self.f_bar)
    }
}

/// `h(x^2, y)` for `h` in `Q[u, u^-1, v]`.
pub fn pull_to_xy(h: &Poly) -> Result<Poly, PolyError> {
    let h = h.change_context(&contexts::uv())?;
    let xy = contexts::xy();
    let images = [Poly::var(&xy, "x")?.pow(2), Poly::var(&xy, "y")?];
    h.compose(&images, &xy)
}

/// The inverse of [`pull_to_xy`] on polynomials even in `x`.
pub fn even_to_uv(f: &Poly) -> Result<Poly, PolyError> {
    let f = f.change_context(&contexts::xy())?;
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        if m.0[0] % 2 != 0 {
            return Err(PolyError::NotEven("x".into()));
        }
        terms.push((Monomial(vec![m.0[0] / 2, m.0[1]]), c.clone()));
    }
    Poly::from_terms(&contexts::uv(), terms)
}

/// The degree on `Q[u, u^-1, v]` obtained by restricting `delta_1` along
/// `u = x^2, v = y`. Each evaluation also computes `delta_2` and fails if
/// the two disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackEta {
    pub delta1: SubstitutedWeightedDegree,
    pub delta2: SubstitutedWeightedDegree,
}

impl DegreeLike for PullbackEta {
    fn degree(&self, h: &Poly) -> Result<Degree, DegreeError> {
        let f = pull_to_xy(h)?;
        let (d1, d2) = (self.delta1.degree(&f)?, self.delta2.degree(&f)?);
        if d1 != d2 {
            return Err(DegreeError::ExtensionMismatch {
                poly: h.to_string(),
                d1: d1.to_string(),
                d2: d2.to_string(),
            });
        }
        Ok(d1)
    }
    fn domain(&self) -> Ctx {
        contexts::uv()
    }
    fn is_semidegree(&self) -> bool {
        true
    }
}

/// The degree functions of one family member.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub delta1: SubstitutedWeightedDegree,
    pub delta2: SubstitutedWeightedDegree,
    pub delta: MaxDegree,
    /// `f` is even, so `delta_1 = delta_2` and the max is a semidegree.
    pub degenerate: bool,
}

impl FamilyInstance {
    pub fn pullback_eta(&self) -> PullbackEta {
        PullbackEta {
            delta1: self.delta1.clone(),
            delta2: self.delta2.clone(),
        }
    }

    pub fn delta_function(&self) -> DegreeFunction {
        DegreeFunction::Max(self.delta.clone())
    }

    /// JSON specs of `delta_1`, `delta_2`, `delta`.
    pub fn spec_json(&self) -> [String; 3] {
        [
            DegreeFunction::Substituted(self.delta1.clone()).to_json(),
            DegreeFunction::Substituted(self.delta2.clone()).to_json(),
            self.delta_function().to_json(),
        ]
    }
}

pub fn instantiate_family(spec: &FamilySpec) -> Result<FamilyInstance, Vec<FamilyViolation>> {
    let violations = validate_family(spec);
    if !violations.is_empty() {
        return Err(violations);
    }
    let shift = spec.shift().expect("validated shift");
    let invalid = |e: DegreeError| {
        vec![FamilyViolation::BadCoefficient {
            exponent: 0,
            message: e.to_string(),
        }]
    };
    let delta1 = SubstitutedWeightedDegree::new(spec.w1, spec.w2, shift).map_err(invalid)?;
    let delta2 = delta1.conjugate();
    let degenerate = delta1 == delta2;
    let delta = MaxDegree::new(vec![
        DegreeFunction::Substituted(delta1.clone()),
        DegreeFunction::Substituted(delta2.clone()),
    ])
    .map_err(invalid)?;
    Ok(FamilyInstance {
        spec: spec.clone(),
        delta1,
        delta2,
        delta,
        degenerate,
    })
}

/// `eta` of the main example through its Puiseux series, checked against
/// the pullback of `delta_1` and `delta_2`.
pub fn pullback_eta(h: &Poly) -> Result<Degree, DegreeError> {
    let inst = instantiate_family(&FamilySpec::main_example()).expect("main example is valid");
    let pulled = inst.pullback_eta().degree(h)?;
    let series = main_example::eta().degree(h)?;
    if pulled != series {
        return Err(DegreeError::ExtensionMismatch {
            poly: h.to_string(),
            d1: pulled.to_string(),
            d2: series.to_string(),
        });
    }
    Ok(pulled)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralityReport {
    pub f: String,
    pub g1: String,
    pub g2: String,
    pub d_prime: Degree,
    pub eta_g1: Degree,
    pub eta_g2: Degree,
    pub passed: bool,
}

/// For `f` in `Q[x, y]`: the coefficients of `(T - f)(T - f(-x, y))`, viewed
/// in `Q[u, v]`, satisfy `eta(g_e) <= e * max(delta_1 f, delta_2 f)`.
pub fn integral_closure_check(
    f: &Poly,
    inst: &FamilyInstance,
    eta: &dyn DegreeLikeDyn,
) -> Result<IntegralityReport, DegreeError> {
    let pair = ConjugatePair::new(f)?;
    let (g1, g2) = pair.minimal_polynomial();
    let (g1, g2) = (even_to_uv(&g1)?, even_to_uv(&g2)?);
    let d_prime = inst.delta.degree(&pair.f)?;
    let (eta_g1, eta_g2) = (eta.eval(&g1)?, eta.eval(&g2)?);
    Ok(IntegralityReport {
        f: pair.f.to_string(),
        g1: g1.to_string(),
        g2: g2.to_string(),
        d_prime,
        eta_g1,
        eta_g2,
        passed: eta_g1 <= d_prime && eta_g2 <= d_prime.scale(2),
    })
}

/// Object-safe view of [`DegreeLike`], so checks can take either `eta`.
pub trait DegreeLikeDyn: Sync {
    fn eval(&self, f: &Poly) -> Result<Degree, DegreeError>;
}

impl<D: DegreeLike> DegreeLikeDyn for D {
    fn eval(&self, f: &Poly) -> Result<Degree, DegreeError> {
        self.degree(f)
    }
}

/// Which `eta` a batch check compares against.
pub enum EtaSource {
    /// The main example's Puiseux series.
    Series(PuiseuxDegree),
    /// `delta_1` pulled back along `u = x^2, v = y`.
    Pullback,
}

impl EtaSource {
    /// The series for the main example, the pullback otherwise.
    pub fn for_instance(inst: &FamilyInstance) -> Self {
        if inst.spec == FamilySpec::main_example() {
            EtaSource::Series(main_example::eta())
        } else {
            EtaSource::Pullback
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EtaSource::Series(_) => "puiseux",
            EtaSource::Pullback => "pullback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionRow {
    pub index: u64,
    pub h: String,
    pub delta1: Degree,
    pub delta2: Degree,
    pub eta: Degree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtensionReport {
    pub seed: u64,
    pub count: u64,
    pub eta_source: String,
    pub disagreements: Vec<ExtensionRow>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// `delta_1(h(x^2, y)) = delta_2(h(x^2, y)) = eta(h)` on `count` random `h`
/// in `Q[u, v]` of total degree at most `degree_bound`.
pub fn extension_scan(
    inst: &FamilyInstance,
    eta: &EtaSource,
    count: u64,
    degree_bound: u32,
    seed: u64,
) -> Result<ExtensionReport, DegreeError> {
    let sampler = PolySampler::new(contexts::uv(), degree_bound, 5);
    let rows: Vec<Option<ExtensionRow>> = (0..count)
        .into_par_iter()
        .map(|i| -> Result<_, DegreeError> {
            let h = sampler.sample_nonzero(&mut sample_rng(seed, i));
            let f = pull_to_xy(&h)?;
            let (d1, d2) = (inst.delta1.degree(&f)?, inst.delta2.degree(&f)?);
            let e = match eta {
                EtaSource::Series(p) => p.degree(&h)?,
                EtaSource::Pullback => d1,
            };
            Ok((d1 != d2 || d1 != e).then(|| ExtensionRow {
                index: i,
                h: h.to_string(),
                delta1: d1,
                delta2: d2,
                eta: e,
            }))
        })
        .collect::<Result<_, _>>()?;
    Ok(ExtensionReport {
        seed,
        count,
        eta_source: eta.name().into(),
        disagreements: rows.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralityScan {
    pub seed: u64,
    pub count: u64,
    pub eta_source: String,
    pub failures: Vec<IntegralityReport>,
}

impl IntegralityScan {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// [`integral_closure_check`] on `count` random `f` in `Q[x, y]`.
pub fn integrality_scan(
    inst: &FamilyInstance,
    eta: &EtaSource,
    count: u64,
    degree_bound: u32,
    seed: u64,
) -> Result<IntegralityScan, DegreeError> {
    let sampler = PolySampler::new(contexts::xy(), degree_bound, 5);
    let pullback = inst.pullback_eta();
    let eta_dyn: &dyn DegreeLikeDyn = match eta {
        EtaSource::Series(p) => p,
        EtaSource::Pullback => &pullback,
    };
    let reports: Vec<IntegralityReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let f = sampler.sample_nonzero(&mut sample_rng(seed, i));
            integral_closure_check(&f, inst, eta_dyn)
        })
        .collect::<Result<_, _>>()?;
    Ok(IntegralityScan {
        seed,
        count,
        eta_source: eta.name().into(),
        failures: reports.into_iter().filter(|r| !r.passed).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn spec(json: &str) -> FamilySpec {
        FamilySpec::from_json(json).unwrap()
    }

    fn uv(s: &str) -> Poly {
        parse_poly(s, &contexts::uv()).unwrap()
    }

    fn xy(s: &str) -> Poly {
        parse_poly(s, &contexts::xy()).unwrap()
    }

    #[test]
    fn main_example_reproduces_the_fixed_specs() {
        let s = spec(r#"{"p":5, "coeffs":{"-2":1, "5":1}, "w1":1, "w2":3}"#);
        assert_eq!(s, FamilySpec::main_example());
        assert!(validate_family(&s).is_empty());
        let inst = instantiate_family(&s).unwrap();
        assert_eq!(
            inst.spec_json(),
            [
                DegreeFunction::Substituted(main_example::delta1()).to_json(),
                DegreeFunction::Substituted(main_example::delta2()).to_json(),
                DegreeFunction::Max(main_example::delta()).to_json(),
            ]
        );
        assert_eq!(inst.delta2.shift(), &xy("-x^5 + x^-2"));
        assert!(!inst.degenerate);
    }

    #[test]
    fn invalid_members() {
        let v = validate_family(&spec(r#"{"p":5,"coeffs":{"-1":1,"5":1},"w1":1,"w2":3}"#));
        assert!(v.iter().any(|e| matches!(e, FamilyViolation::PoleOrderTooSmall { q: 1 })));
        let v = validate_family(&spec(r#"{"p":5,"coeffs":{"-2":1,"5":1},"w1":1,"w2":7}"#));
        assert_eq!(
            v,
            vec![FamilyViolation::WeightWindow { q: 2, w1: 1, w2: 7, p: 5 }]
        );
        let v = validate_family(&spec(r#"{"p":4,"coeffs":{"-2":1,"4":1},"w1":1,"w2":3}"#));
        assert!(v.contains(&FamilyViolation::PNotOddAtLeast3 { p: 4 }));
        let v = validate_family(&spec(r#"{"p":5,"coeffs":{"-2":1,"3":1},"w1":1,"w2":3}"#));
        assert!(v.contains(&FamilyViolation::LeadingCoefficientZero));
        let v = validate_family(&spec(r#"{"p":5,"coeffs":{"-5":1,"5":1},"w1":1,"w2":3}"#));
        assert!(v.contains(&FamilyViolation::ExponentOutOfRange { exponent: -5 }));
        let v = validate_family(&spec(r#"{"p":5,"coeffs":{"-2":"1/x","5":1},"w1":1,"w2":3}"#));
        assert!(matches!(v[0], FamilyViolation::BadCoefficient { exponent: -2, .. }));
    }

    #[test]
    fn second_member_is_valid() {
        let s = spec(r#"{"p":5,"coeffs":{"-3":1,"5":1},"w1":1,"w2":4}"#);
        assert!(validate_family(&s).is_empty());
        let s = spec(r#"{"p":5,"coeffs":{"-3":"1/2","5":-2,"1":3},"w1":1,"w2":4}"#);
        let inst = instantiate_family(&s).unwrap();
        assert_eq!(inst.delta2.shift(), &xy("2*x^5 - 3*x - 1/2*x^-3"));
    }

    #[test]
    fn even_members_are_flagged() {
        let s = spec(r#"{"p":5,"coeffs":{"-2":1,"4":1,"5":0},"w1":1,"w2":3}"#);
        assert!(!validate_family(&s).is_empty());
        let even = FamilySpec {
            p: 5,
            coeffs: [(-2, CoeffValue::Int(1))].into(),
            w1: 1,
            w2: 3,
        };
        let shift = even.shift().unwrap();
        let d = SubstitutedWeightedDegree::new(1, 3, shift).unwrap();
        assert_eq!(d.conjugate(), d);
    }

    #[test]
    fn pullback_values() {
        assert_eq!(pullback_eta(&uv("v^2 - u^5")).unwrap(), Degree::Finite(3));
        assert_eq!(pullback_eta(&uv("u")).unwrap(), Degree::Finite(2));
        assert_eq!(pullback_eta(&uv("1")).unwrap(), Degree::Finite(0));
        assert_eq!(pullback_eta(&uv("v^2 - u^5 - 2*u^-1*v")).unwrap(), Degree::Finite(2));
    }

    #[test]
    fn integrality_examples() {
        let inst = instantiate_family(&FamilySpec::main_example()).unwrap();
        let eta = main_example::eta();
        let r = integral_closure_check(&xy("y"), &inst, &eta).unwrap();
        assert_eq!((r.g1.as_str(), r.g2.as_str()), ("-2*v", "v^2"));
        assert_eq!((r.eta_g1, r.eta_g2, r.d_prime), (Degree::Finite(5), Degree::Finite(10), Degree::Finite(5)));
        assert!(r.passed);
        let r = integral_closure_check(&xy("x"), &inst, &eta).unwrap();
        assert_eq!((r.g1.as_str(), r.g2.as_str()), ("0", "-u"));
        assert_eq!(r.eta_g2, Degree::Finite(2));
        assert!(r.passed);
        let r = integral_closure_check(&xy("7"), &inst, &eta).unwrap();
        assert_eq!((r.eta_g1, r.eta_g2), (Degree::Finite(0), Degree::Finite(0)));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let f = xy("3*x^3*y - x^-1 + y^2 - 5*x");
        assert_eq!(conjugate_poly(&conjugate_poly(&f).unwrap()).unwrap(), f);
        assert_eq!(conjugate_poly(&f).unwrap(), xy("-3*x^3*y + x^-1 + y^2 + 5*x"));
        assert!(even_to_uv(&f).is_err());
    }

    #[test]
    fn small_scans() {
        let inst = instantiate_family(&FamilySpec::main_example()).unwrap();
        let eta = EtaSource::for_instance(&inst);
        assert_eq!(eta.name(), "puiseux");
        assert!(extension_scan(&inst, &eta, 20, 6, 1).unwrap().passed());
        assert!(integrality_scan(&inst, &eta, 20, 6, 1).unwrap().passed());
    }
}
