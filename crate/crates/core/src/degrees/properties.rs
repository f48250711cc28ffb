use rayon::prelude::*;
use serde::Serialize;

use crate::degree::Degree;
use crate::error::DegreeError;
use crate::sample::{sample_rng, PolySampler};

use super::DegreeLike;

/// A sampled pair on which some inequality or equality was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub index: u64,
    pub f: String,
    pub g: String,
    /// Left side: `deg(f+g)` for (P1), `deg(fg)` for (P2).
    pub lhs: Degree,
    /// Right side: `max` for (P1), `deg f + deg g` for (P2).
    pub rhs: Degree,
}

/// Outcome of checking (P1), (P2) and multiplicativity on random pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub seed: u64,
    pub count: u64,
    /// Whether the function claims `deg(fg) = deg f + deg g`.
    pub semidegree: bool,
    pub p1_violations: Vec<Witness>,
    pub p2_violations: Vec<Witness>,
    /// Pairs with `deg(fg) < deg f + deg g`. For a semidegree these are
    /// failures; otherwise they merely show the function is not one.
    pub strict_subadditivity: Vec<Witness>,
}

impl PropertyReport {
    /// (P1) and (P2) hold on every sample, and equality too when claimed.
    pub fn passed(&self) -> bool {
        self.p1_violations.is_empty()
            && self.p2_violations.is_empty()
            && (!self.semidegree || self.strict_subadditivity.is_empty())
    }
}

struct Outcome {
    p1: Option<Witness>,
    p2: Option<Witness>,
    strict: Option<Witness>,
}

fn check_pair<D: DegreeLike>(
    deg: &D,
    sampler: &PolySampler,
    seed: u64,
    index: u64,
) -> Result<Outcome, DegreeError> {
    let mut rng = sample_rng(seed, index);
    let f = sampler.sample_nonzero(&mut rng);
    let g = sampler.sample_nonzero(&mut rng);
    let (df, dg) = (deg.degree(&f)?, deg.degree(&g)?);
    let sum = deg.degree(&f.try_add(&g)?)?;
    let prod = deg.degree(&f.try_mul(&g)?)?;
    let witness = |lhs, rhs| Witness {
        index,
        f: f.to_string(),
        g: g.to_string(),
        lhs,
        rhs,
    };
    let bound = df.max(dg);
    let additive = df + dg;
    Ok(Outcome {
        p1: (sum > bound).then(|| witness(sum, bound)),
        p2: (prod > additive).then(|| witness(prod, additive)),
        strict: (prod < additive).then(|| witness(prod, additive)),
    })
}

/// Checks the degree-like axioms on `count` random pairs `(f, g)` of nonzero
/// polynomials. Pair `i` is drawn from stream `i` of `seed`, so the report
/// does not depend on thread scheduling.
pub fn check_degree_properties<D: DegreeLike>(
    deg: &D,
    sampler: &PolySampler,
    count: u64,
    seed: u64,
) -> Result<PropertyReport, DegreeError> {
    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|i| check_pair(deg, sampler, seed, i))
        .collect::<Result<_, _>>()?;
    let mut report = PropertyReport {
        seed,
        count,
        semidegree: deg.is_semidegree(),
        p1_violations: Vec::new(),
        p2_violations: Vec::new(),
        strict_subadditivity: Vec::new(),
    };
    for o in outcomes {
        report.p1_violations.extend(o.p1);
        report.p2_violations.extend(o.p2);
        report.strict_subadditivity.extend(o.strict);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::main_example::{delta, delta1, eta, omega};
    use super::*;
    use crate::contexts;

    #[test]
    fn delta1_is_a_semidegree_on_samples() {
        let s = PolySampler::new(contexts::xy(), 6, 4);
        let r = check_degree_properties(&delta1(), &s, 500, 42).unwrap();
        assert_eq!(r.count, 500);
        assert!(r.semidegree);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn max_satisfies_p1_p2_but_is_not_claimed_multiplicative() {
        let s = PolySampler::new(contexts::xy(), 6, 4);
        let r = check_degree_properties(&delta(), &s, 200, 3).unwrap();
        assert!(!r.semidegree);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn eta_and_omega_are_semidegrees_on_samples() {
        let s = PolySampler::new(contexts::uv(), 5, 3);
        assert!(check_degree_properties(&eta(), &s, 100, 9).unwrap().passed());
        let s = PolySampler::new(contexts::s_ring(), 5, 3);
        assert!(check_degree_properties(&omega(), &s, 100, 9).unwrap().passed());
    }

    #[test]
    fn report_is_independent_of_threading() {
        let s = PolySampler::new(contexts::xy(), 6, 4);
        let a = check_degree_properties(&delta(), &s, 64, 11).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| check_degree_properties(&delta(), &s, 64, 11).unwrap());
        assert_eq!(a, b);
    }
}
