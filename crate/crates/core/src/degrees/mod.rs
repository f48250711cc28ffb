//! Degree-like functions: weighted degrees, weighted degrees after a shift
//! of coordinates, degrees through a Puiseux substitution, and pointwise
//! maxima of these.

mod properties;
mod puiseux;
mod substituted;

use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::contexts;
use crate::degree::Degree;
use crate::error::DegreeError;
use crate::parse::parse_poly;
use crate::ring::{Ctx, RingContext, WeightVector};
use crate::Poly;

pub use properties::{check_degree_properties, PropertyReport, Witness};
pub use puiseux::PuiseuxDegree;
pub use substituted::SubstitutedWeightedDegree;

/// Anything that assigns a degree in `Z ∪ {-inf}` to polynomials of a fixed
/// domain ring.
pub trait DegreeLike: Sync {
    fn degree(&self, f: &Poly) -> Result<Degree, DegreeError>;

    /// Ring the function is defined on.
    fn domain(&self) -> Ctx;

    /// Whether the function is expected to be multiplicative, i.e.
    /// `deg(fg) = deg(f) + deg(g)` always.
    fn is_semidegree(&self) -> bool;
}

/// Plain weighted degree on a fixed context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDegree {
    pub ctx: Ctx,
    pub weights: WeightVector,
}

impl WeightedDegree {
    pub fn new(ctx: Ctx, weights: Vec<i64>) -> Result<Self, DegreeError> {
        if weights.len() != ctx.nvars() {
            return Err(DegreeError::InvalidSpec(format!(
                "{} weights for {} variables",
                weights.len(),
                ctx.nvars()
            )));
        }
        Ok(WeightedDegree {
            ctx,
            weights: WeightVector(weights),
        })
    }
}

impl DegreeLike for WeightedDegree {
    fn degree(&self, f: &Poly) -> Result<Degree, DegreeError> {
        let f = f.change_context(&self.ctx)?;
        Ok(f.weighted_degree(&self.weights))
    }
    fn domain(&self) -> Ctx {
        self.ctx.clone()
    }
    fn is_semidegree(&self) -> bool {
        true
    }
}

/// Pointwise maximum of finitely many degree functions on one domain.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxDegree {
    components: Vec<DegreeFunction>,
}

impl MaxDegree {
    pub fn new(components: Vec<DegreeFunction>) -> Result<Self, DegreeError> {
        let first = components.first().ok_or(DegreeError::EmptyMax)?.domain();
        if components.iter().any(|c| *c.domain() != *first) {
            return Err(DegreeError::InvalidSpec(
                "max components live on different rings".into(),
            ));
        }
        Ok(MaxDegree { components })
    }

    pub fn components(&self) -> &[DegreeFunction] {
        &self.components
    }
}

impl DegreeLike for MaxDegree {
    fn degree(&self, f: &Poly) -> Result<Degree, DegreeError> {
        let mut best = Degree::NegInf;
        for c in &self.components {
            best = best.max(c.degree(f)?);
        }
        Ok(best)
    }
    fn domain(&self) -> Ctx {
        self.components[0].domain()
    }
    fn is_semidegree(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_semidegree()
    }
}

/// The four implemented kinds of degree-like function.
#[derive(Clone, Debug, PartialEq)]
pub enum DegreeFunction {
    Weighted(WeightedDegree),
    Substituted(SubstitutedWeightedDegree),
    Max(MaxDegree),
    Puiseux(PuiseuxDegree),
}

impl DegreeFunction {
    pub fn kind(&self) -> &'static str {
        match self {
            DegreeFunction::Weighted(_) => "weighted",
            DegreeFunction::Substituted(_) => "substituted",
            DegreeFunction::Max(_) => "max",
            DegreeFunction::Puiseux(_) => "puiseux",
        }
    }

    pub fn to_spec(&self) -> DegreeSpec {
        match self {
            DegreeFunction::Weighted(w) => DegreeSpec::Weighted {
                vars: w.ctx.names().to_vec(),
                invertible: (0..w.ctx.nvars()).map(|i| w.ctx.is_invertible(i)).collect(),
                weights: w.weights.0.clone(),
            },
            DegreeFunction::Substituted(s) => DegreeSpec::Substituted {
                x_weight: s.x_weight(),
                y_weight_neg: s.y_weight_neg(),
                shift: s.shift().to_string(),
            },
            DegreeFunction::Max(m) => DegreeSpec::Max {
                components: m.components.iter().map(|c| c.to_spec()).collect(),
            },
            DegreeFunction::Puiseux(p) => DegreeSpec::Puiseux {
                ramification: p.ramification(),
                scale: p.scale(),
                series: p.series().to_string(),
            },
        }
    }

    pub fn from_spec(spec: &DegreeSpec) -> Result<Self, DegreeError> {
        Ok(match spec {
            DegreeSpec::Weighted {
                vars,
                invertible,
                weights,
            } => {
                if invertible.len() != vars.len() {
                    return Err(DegreeError::InvalidSpec(
                        "`invertible` length differs from `vars`".into(),
                    ));
                }
                let pairs: Vec<(&str, bool)> = vars
                    .iter()
                    .map(String::as_str)
                    .zip(invertible.iter().copied())
                    .collect();
                DegreeFunction::Weighted(WeightedDegree::new(
                    RingContext::new(&pairs),
                    weights.clone(),
                )?)
            }
            DegreeSpec::Substituted {
                x_weight,
                y_weight_neg,
                shift,
            } => {
                let shift = parse_poly::<Rational>(shift, &contexts::xy())?;
                DegreeFunction::Substituted(SubstitutedWeightedDegree::new(
                    *x_weight,
                    *y_weight_neg,
                    shift,
                )?)
            }
            DegreeSpec::Max { components } => DegreeFunction::Max(MaxDegree::new(
                components
                    .iter()
                    .map(DegreeFunction::from_spec)
                    .collect::<Result<_, _>>()?,
            )?),
            DegreeSpec::Puiseux {
                ramification,
                scale,
                series,
            } => {
                let series = parse_poly(series, &contexts::w())?;
                DegreeFunction::Puiseux(PuiseuxDegree::new(*ramification, series, *scale)?)
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("degree spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DegreeError> {
        let spec: DegreeSpec =
            serde_json::from_str(text).map_err(|e| DegreeError::InvalidSpec(e.to_string()))?;
        Self::from_spec(&spec)
    }
}

impl DegreeLike for DegreeFunction {
    fn degree(&self, f: &Poly) -> Result<Degree, DegreeError> {
        match self {
            DegreeFunction::Weighted(d) => d.degree(f),
            DegreeFunction::Substituted(d) => d.degree(f),
            DegreeFunction::Max(d) => d.degree(f),
            DegreeFunction::Puiseux(d) => d.degree(f),
        }
    }
    fn domain(&self) -> Ctx {
        match self {
            DegreeFunction::Weighted(d) => d.domain(),
            DegreeFunction::Substituted(d) => d.domain(),
            DegreeFunction::Max(d) => d.domain(),
            DegreeFunction::Puiseux(d) => d.domain(),
        }
    }
    fn is_semidegree(&self) -> bool {
        match self {
            DegreeFunction::Weighted(d) => d.is_semidegree(),
            DegreeFunction::Substituted(d) => d.is_semidegree(),
            DegreeFunction::Max(d) => d.is_semidegree(),
            DegreeFunction::Puiseux(d) => d.is_semidegree(),
        }
    }
}

/// JSON form of a [`DegreeFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum DegreeSpec {
    Weighted {
        vars: Vec<String>,
        #[serde(default)]
        invertible: Vec<bool>,
        weights: Vec<i64>,
    },
    #[serde(rename_all = "camelCase")]
    Substituted {
        x_weight: i64,
        y_weight_neg: i64,
        shift: String,
    },
    Max {
        components: Vec<DegreeSpec>,
    },
    Puiseux {
        ramification: u32,
        scale: u32,
        series: String,
    },
}

/// The degree functions of the main counterexample.
pub mod main_example {
    use super::*;

    fn shift(text: &str) -> Poly {
        parse_poly(text, &contexts::xy()).expect("static shift parses")
    }

    /// `delta_1`: weight 1 on `x`, -3 on `y_1 = y - x^5 - x^-2`.
    pub fn delta1() -> SubstitutedWeightedDegree {
        SubstitutedWeightedDegree::new(1, 3, shift("x^5 + x^-2")).expect("valid")
    }

    /// `delta_2`: weight 1 on `x`, -3 on `y_2 = y + x^5 - x^-2`.
    pub fn delta2() -> SubstitutedWeightedDegree {
        SubstitutedWeightedDegree::new(1, 3, shift("-x^5 + x^-2")).expect("valid")
    }

    /// `delta = max(delta_1, delta_2)`.
    pub fn delta() -> MaxDegree {
        MaxDegree::new(vec![
            DegreeFunction::Substituted(delta1()),
            DegreeFunction::Substituted(delta2()),
        ])
        .expect("same domain")
    }

    /// `eta`: twice the `u`-degree after `v = u^(5/2) + u^-1 + xi*u^(-3/2)`,
    /// written in `w = u^(1/2)`.
    pub fn eta() -> PuiseuxDegree {
        let series = parse_poly("w^5 + w^-2 + xi*w^-3", &contexts::w()).expect("static series");
        PuiseuxDegree::new(2, series, 2).expect("valid")
    }

    /// `omega` on `S = Q[x,y,z1,z2]` with weights `(1, 5, -2, -1)`.
    pub fn omega() -> WeightedDegree {
        WeightedDegree::new(contexts::s_ring(), vec![1, 5, -2, -1]).expect("four weights")
    }

    /// The key forms of `eta`, in `Q[u, u^-1, v]`.
    pub fn eta_key_forms() -> Vec<Poly> {
        ["u", "v", "v^2 - u^5", "v^2 - u^5 - 2*u^-1*v"]
            .iter()
            .map(|s| parse_poly(s, &contexts::uv()).expect("static key form"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::main_example::*;
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s, &contexts::xy()).unwrap()
    }

    #[test]
    fn max_degree_examples() {
        let d = delta();
        assert_eq!(d.degree(&p("y")).unwrap(), Degree::Finite(5));
        assert_eq!(d.degree(&p("y - x^5")).unwrap(), Degree::Finite(5));
        assert_eq!(d.degree(&p("1")).unwrap(), Degree::Finite(0));
        assert_eq!(d.degree(&p("0")).unwrap(), Degree::NegInf);
        assert!(!d.is_semidegree());
    }

    #[test]
    fn empty_max_is_rejected() {
        assert_eq!(MaxDegree::new(vec![]).unwrap_err(), DegreeError::EmptyMax);
    }

    #[test]
    fn spec_json_round_trip() {
        let d1 = DegreeFunction::Substituted(delta1());
        let json = d1.to_json();
        assert_eq!(
            json,
            r#"{"kind":"substituted","xWeight":1,"yWeightNeg":3,"shift":"x^5 + x^-2"}"#
        );
        assert_eq!(DegreeFunction::from_json(&json).unwrap(), d1);
        let all = [
            DegreeFunction::Max(delta()),
            DegreeFunction::Puiseux(eta()),
            DegreeFunction::Weighted(omega()),
        ];
        for f in all {
            assert_eq!(DegreeFunction::from_json(&f.to_json()).unwrap(), f);
        }
    }

    #[test]
    fn bad_specs() {
        assert!(DegreeFunction::from_json(r#"{"kind":"max","components":[]}"#).is_err());
        assert!(DegreeFunction::from_json(
            r#"{"kind":"substituted","xWeight":0,"yWeightNeg":3,"shift":"x"}"#
        )
        .is_err());
        assert!(DegreeFunction::from_json(
            r#"{"kind":"substituted","xWeight":1,"yWeightNeg":3,"shift":"x + y"}"#
        )
        .is_err());
        assert!(DegreeFunction::from_json(r#"{"kind":"nope"}"#).is_err());
    }

    #[test]
    fn omega_on_generators() {
        let s = contexts::s_ring();
        let w = omega();
        let f = parse_poly("x^2*z1 - 1", &s).unwrap();
        assert_eq!(w.degree(&f).unwrap(), Degree::Finite(0));
        let g = parse_poly("y - x^5", &s).unwrap();
        assert_eq!(w.degree(&g).unwrap(), Degree::Finite(5));
    }
}
