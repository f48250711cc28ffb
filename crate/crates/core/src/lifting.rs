//! Presentation of `Q[x,y]^{delta_i}` as a quotient of
//! `S = Q[x, y, z1, z2]`, and the descent that turns any lift of `f` into
//! one whose `omega`-degree equals `delta_i(f)`.
//!
//! With `s = +1` for `i = 1` and `s = -1` for `i = 2`:
//!
//! * `pi_i` fixes `x, y` and sends `z1 -> y - s x^5`,
//!   `z2 -> x^2 (y - s x^5) - 1`;
//! * the ideal `J_i` is generated by `g1 = y - s x^5` and `g2 = x^2 z1 - 1`;
//! * `F` lies in `J_i` iff it vanishes under `y -> s x^5`, `z1 -> x^-2`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{rat, Rational};
use crate::contexts;
use crate::degree::Degree;
use crate::degrees::main_example::{delta1, delta2};
use crate::degrees::{DegreeLike, SubstitutedWeightedDegree};
use crate::error::LiftError;
use crate::linalg::FractionFreeEchelon;
use crate::ring::{Ctx, Monomial, WeightVector};
use crate::sample::{sample_rng, PolySampler};
use crate::Poly;

/// Weights of `x, y, z1, z2`.
pub const OMEGA: [i64; 4] = [1, 5, -2, -1];

const Y: usize = 1;
const Z1: usize = 2;

/// The two generators of `J_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    /// `y - s x^5`, of `omega`-degree 5.
    pub g1: Poly,
    /// `x^2 z1 - 1`, of `omega`-degree 0.
    pub g2: Poly,
}

/// The ring `S` for one index `i`, tied to its sign and to `delta_i`.
#[derive(Clone, Debug)]
pub struct SContext {
    index: u8,
    sign: i64,
    ring: Ctx,
    omega: WeightVector,
    delta: SubstitutedWeightedDegree,
    ideal: IdealSpec,
    pi_images: Vec<Poly>,
    quotient_images: Vec<Poly>,
}

impl SContext {
    /// `i` must be 1 or 2.
    pub fn new(i: u8) -> Option<Self> {
        let (sign, delta) = match i {
            1 => (1, delta1()),
            2 => (-1, delta2()),
            _ => return None,
        };
        let s = contexts::s_ring();
        let xy = contexts::xy();
        let q = contexts::quotient();
        let v = |ctx: &Ctx, name: &str| Poly::var(ctx, name).expect("fixed variable");
        let sx5 = |ctx: &Ctx| v(ctx, "x").pow(5).scale(&rat(sign));

        let g1 = &v(&s, "y") - &sx5(&s);
        let g2 = &(&v(&s, "x").pow(2) * &v(&s, "z1")) - &Poly::one(&s);
        let pz1 = &v(&xy, "y") - &sx5(&xy);
        let pz2 = &(&v(&xy, "x").pow(2) * &pz1) - &Poly::one(&xy);
        let pi_images = vec![v(&xy, "x"), v(&xy, "y"), pz1, pz2];
        let x_inv2 = v(&q, "x").pow_int(-2).expect("x is a unit");
        let quotient_images = vec![v(&q, "x"), sx5(&q), x_inv2, v(&q, "z2")];
        Some(SContext {
            index: i,
            sign,
            ring: s,
            omega: WeightVector(OMEGA.to_vec()),
            delta,
            ideal: IdealSpec { g1, g2 },
            pi_images,
            quotient_images,
        })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn ring(&self) -> &Ctx {
        &self.ring
    }

    pub fn omega(&self) -> &WeightVector {
        &self.omega
    }

    pub fn delta(&self) -> &SubstitutedWeightedDegree {
        &self.delta
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn omega_degree(&self, f: &Poly) -> Degree {
        f.weighted_degree(&self.omega)
    }

    fn in_s(&self, f: &Poly) -> Result<Poly, LiftError> {
        Ok(f.change_context(&self.ring)?)
    }

    /// `pi_i(F)` in `Q[x, y]`.
    pub fn apply_pi(&self, f: &Poly) -> Result<Poly, LiftError> {
        let f = self.in_s(f)?;
        Ok(f.compose(&self.pi_images, &contexts::xy())?)
    }

    /// Image of `F` in `S / J_i = Q[x, x^-1, z2]`.
    pub fn quotient_image(&self, f: &Poly) -> Result<Poly, LiftError> {
        let f = self.in_s(f)?;
        Ok(f.compose(&self.quotient_images, &contexts::quotient())?)
    }

    pub fn ideal_membership(&self, f: &Poly) -> Result<bool, LiftError> {
        Ok(self.quotient_image(f)?.is_zero())
    }

    fn check_decomposition(&self, h: &Poly, h1: &Poly, h2: &Poly) -> Result<(), LiftError> {
        let back = &(h1 * &self.ideal.g1) + &(h2 * &self.ideal.g2);
        if back != *h || !h1.is_polynomial() || !h2.is_polynomial() {
            return Err(LiftError::Verification(format!(
                "{h} != ({h1})*g1 + ({h2})*g2"
            )));
        }
        Ok(())
    }

    fn require_homogeneous_member(&self, h: &Poly) -> Result<Poly, LiftError> {
        let h = self.in_s(h)?;
        if !h.is_homogeneous(&self.omega) {
            return Err(LiftError::NotHomogeneous(h.to_string()));
        }
        if !self.ideal_membership(&h)? {
            return Err(LiftError::NotMember(h.to_string()));
        }
        Ok(h)
    }

    /// `H = H1 g1 + H2 g2` for an `omega`-homogeneous member `H`.
    ///
    /// Divides by `g1` as a monic polynomial in `y`; the remainder `r` lies in
    /// `Q[x, z1, z2]` and is a multiple `Q g2`, whose coefficients in `z1`
    /// follow from `Q_j = x^2 Q_{j-1} - r_j`. Falls back to
    /// [`SContext::decompose_by_linear_solve`] if the last coefficient does
    /// not close up. The result is re-expanded before it is returned.
    pub fn decompose_leading(&self, h: &Poly) -> Result<(Poly, Poly), LiftError> {
        let h = self.require_homogeneous_member(h)?;
        match self.decompose_by_division(&h) {
            Some((h1, h2)) => {
                self.check_decomposition(&h, &h1, &h2)?;
                Ok((h1, h2))
            }
            None => self.decompose_by_linear_solve(&h, 64),
        }
    }

    fn decompose_by_division(&self, h: &Poly) -> Option<(Poly, Poly)> {
        let s = &self.ring;
        let a = Poly::var(s, "x").expect("x").pow(5).scale(&rat(self.sign));
        let by_y = h.collect_by(Y);
        let top = by_y.keys().next_back().copied().unwrap_or(0);
        let coeff = |k: i32| by_y.get(&k).cloned().unwrap_or_else(|| Poly::zero(s));
        let y = Poly::var(s, "y").expect("y");

        // Synthetic division by y - a: b_{k-1} = c_k + a b_k.
        let mut quotient = Poly::zero(s);
        let mut b = Poly::zero(s);
        for k in (1..=top).rev() {
            b = &coeff(k) + &(&a * &b);
            quotient = &quotient + &(&b * &y.pow(k as u32 - 1));
        }
        let remainder = &coeff(0) + &(&a * &b);

        let by_z1 = remainder.collect_by(Z1);
        let top = by_z1.keys().next_back().copied().unwrap_or(0);
        let x2 = Poly::var(s, "x").expect("x").pow(2);
        let z1 = Poly::var(s, "z1").expect("z1");
        let mut q = Poly::zero(s);
        let mut prev = Poly::zero(s);
        for j in 0..top {
            let rj = by_z1.get(&j).cloned().unwrap_or_else(|| Poly::zero(s));
            prev = &(&x2 * &prev) - &rj;
            q = &q + &(&prev * &z1.pow(j as u32));
        }
        let rt = by_z1.get(&top).cloned().unwrap_or_else(|| Poly::zero(s));
        (&x2 * &prev == rt).then_some((quotient, q))
    }

    /// Second route to the same decomposition: solve for `omega`-homogeneous
    /// cofactors supported on monomials of total degree at most `B`, starting
    /// from `B = deg H` and doubling up to `max_bound`.
    pub fn decompose_by_linear_solve(
        &self,
        h: &Poly,
        max_bound: u32,
    ) -> Result<(Poly, Poly), LiftError> {
        let h = self.require_homogeneous_member(h)?;
        let d = self.omega_degree(&h).finite().unwrap_or(0);
        let mut bound = (h.total_degree().finite().unwrap_or(0) as u32).max(1);
        loop {
            if let Some((h1, h2)) = self.solve_with_support(&h, d, bound) {
                self.check_decomposition(&h, &h1, &h2)?;
                return Ok((h1, h2));
            }
            if bound >= max_bound {
                return Err(LiftError::SearchBound(bound));
            }
            bound = (bound * 2).min(max_bound);
        }
    }

    fn solve_with_support(&self, h: &Poly, d: i64, bound: u32) -> Option<(Poly, Poly)> {
        let s = &self.ring;
        let support1 = homogeneous_monomials(d - 5, bound);
        let support2 = homogeneous_monomials(d, bound);
        let mut columns: Vec<Poly> = Vec::new();
        for m in &support1 {
            columns.push(self.ideal.g1.shift(m));
        }
        for m in &support2 {
            columns.push(self.ideal.g2.shift(m));
        }
        let (h_int, lambda) = clear_denominators(h);
        columns.push(h_int);

        let mut row_index: std::collections::BTreeMap<Monomial, usize> = Default::default();
        for c in &columns {
            for (m, _) in c.terms() {
                let n = row_index.len();
                row_index.entry(m.clone()).or_insert(n);
            }
        }
        let ncols = columns.len();
        let mut rows = vec![vec![BigInt::zero(); ncols]; row_index.len()];
        for (j, c) in columns.iter().enumerate() {
            for (m, v) in c.terms() {
                rows[row_index[m]][j] = v.to_integer();
            }
        }
        let ech = FractionFreeEchelon::new(rows, ncols);
        let last = ncols - 1;
        if ech.pivot_cols.contains(&last) {
            return None;
        }
        // Kernel vector with last entry `pivot`: A x + pivot h = 0.
        let mut x = vec![BigInt::zero(); last];
        for (r, &pc) in ech.pivot_cols.iter().enumerate() {
            x[pc] = -ech.rows[r][last].clone();
        }
        let denom = Rational::from_integer(ech.pivot.clone()) * lambda;
        let entry = |k: usize| Rational::from_integer(-x[k].clone()) / denom.clone();
        let h1 = Poly::from_terms(
            s,
            support1.iter().enumerate().map(|(k, m)| (m.clone(), entry(k))),
        )
        .ok()?;
        let h2 = Poly::from_terms(
            s,
            support2
                .iter()
                .enumerate()
                .map(|(k, m)| (m.clone(), entry(support1.len() + k))),
        )
        .ok()?;
        Some((h1, h2))
    }

    /// A lift `F` of `f` with `omega(F) = delta_i(f)`, found by repeatedly
    /// replacing the leading form `H = H1 g1 + H2 g2` with `H1 z1 + H2 z2`.
    /// Starts from `start` (default: `f` itself). Both postconditions are
    /// re-checked before returning.
    pub fn descend_lift(&self, f: &Poly, start: Option<&Poly>) -> Result<Poly, LiftError> {
        let f = f.change_context(&contexts::xy())?;
        if f.is_zero() {
            return Err(LiftError::ZeroInput);
        }
        let mut lift = match start {
            Some(g) => self.in_s(g)?,
            None => self.in_s(&f)?,
        };
        if self.apply_pi(&lift)? != f {
            return Err(LiftError::Verification(format!(
                "start {lift} does not map to {f}"
            )));
        }
        let target = self.delta.degree(&f)?;
        let z1 = Poly::var(&self.ring, "z1")?;
        let z2 = Poly::var(&self.ring, "z2")?;
        while self.omega_degree(&lift) > target {
            let h = lift.leading_form(&self.omega)?;
            let (h1, h2) = self.decompose_leading(&h)?;
            lift = &(&(&lift - &h) + &(&h1 * &z1)) + &(&h2 * &z2);
        }
        if self.apply_pi(&lift)? != f || self.omega_degree(&lift) != target {
            return Err(LiftError::Verification(format!(
                "lift {lift} of {f} has omega {} against delta {target}",
                self.omega_degree(&lift)
            )));
        }
        Ok(lift)
    }
}

/// Monomials of `S` with `omega`-degree `d` and total degree at most `bound`.
pub fn homogeneous_monomials(d: i64, bound: u32) -> Vec<Monomial> {
    let b = bound as i64;
    let mut out = Vec::new();
    for a in 0..=b {
        for y in 0..=(b - a) {
            for c in 0..=(b - a - y) {
                let z2 = a + 5 * y - 2 * c - d;
                if z2 >= 0 && a + y + c + z2 <= b {
                    out.push(Monomial(vec![a as i32, y as i32, c as i32, z2 as i32]));
                }
            }
        }
    }
    out
}

/// `(lambda f, lambda)` with `lambda` the least common denominator, so that
/// `lambda f` has integer coefficients.
fn clear_denominators(f: &Poly) -> (Poly, Rational) {
    let l = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let lambda = Rational::from_integer(l);
    (f.scale(&lambda), lambda)
}

/// One disagreement (or bound violation) found by the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanCounterexample {
    pub index: u64,
    pub poly: String,
    pub omega: Degree,
    pub delta_of_image: Degree,
    pub member: bool,
}

/// Result of checking `omega(F) > delta_i(pi_i F)  <=>  F in J_i` on random
/// homogeneous `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DropScanReport {
    pub index: u8,
    pub seed: u64,
    pub count: u64,
    pub degree_bound: u32,
    pub omega_min: i64,
    pub omega_max: i64,
    pub members: u64,
    pub strict_drops: u64,
    pub disagreements: Vec<ScanCounterexample>,
    /// Samples with `omega(F) < delta_i(pi_i F)`, which must never occur.
    pub bound_violations: Vec<ScanCounterexample>,
}

impl DropScanReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.bound_violations.is_empty()
    }
}

impl SContext {
    /// Random `omega`-homogeneous polynomial of degree in `range`, drawn so
    /// that about a third are members of `J_i`, a third are members plus a
    /// same-degree perturbation, and a third are unconstrained.
    pub fn sample_homogeneous<R: Rng>(
        &self,
        sampler: &PolySampler,
        rng: &mut R,
        range: RangeInclusive<i64>,
        kind: u64,
    ) -> Option<Poly> {
        let attempts = 4000;
        let base = sampler.sample_homogeneous(rng, &self.omega, range, attempts)?;
        if kind % 3 == 0 {
            return Some(base);
        }
        let d = self.omega_degree(&base).finite()?;
        let a = sampler
            .sample_homogeneous(rng, &self.omega, d - 5..=d - 5, attempts)
            .unwrap_or_else(|| Poly::zero(&self.ring));
        let mut f = &(&a * &self.ideal.g1) + &(&base * &self.ideal.g2);
        if kind % 3 == 2 {
            if let Some(extra) = sampler.sample_homogeneous(rng, &self.omega, d..=d, attempts) {
                f = &f + &extra;
            }
        }
        (!f.is_zero()).then_some(f).or(Some(base))
    }

    /// Checks the degree-drop criterion for membership on `count` samples.
    pub fn drop_equivalence_scan(
        &self,
        count: u64,
        degree_bound: u32,
        omega_range: RangeInclusive<i64>,
        seed: u64,
    ) -> Result<DropScanReport, LiftError> {
        let sampler = PolySampler::new(self.ring.clone(), degree_bound, 4);
        let results: Vec<Option<(ScanCounterexample, bool, bool)>> = (0..count)
            .into_par_iter()
            .map(|i| -> Result<_, LiftError> {
                let mut rng = sample_rng(seed, i);
                let Some(f) = self.sample_homogeneous(&sampler, &mut rng, omega_range.clone(), i)
                else {
                    return Ok(None);
                };
                let omega = self.omega_degree(&f);
                let delta_of_image = self.delta.degree(&self.apply_pi(&f)?)?;
                let member = self.ideal_membership(&f)?;
                let row = ScanCounterexample {
                    index: i,
                    poly: f.to_string(),
                    omega,
                    delta_of_image,
                    member,
                };
                Ok(Some((row, omega > delta_of_image, omega < delta_of_image)))
            })
            .collect::<Result<_, _>>()?;
        let mut report = DropScanReport {
            index: self.index,
            seed,
            count: 0,
            degree_bound,
            omega_min: *omega_range.start(),
            omega_max: *omega_range.end(),
            members: 0,
            strict_drops: 0,
            disagreements: Vec::new(),
            bound_violations: Vec::new(),
        };
        for (row, drop, below) in results.into_iter().flatten() {
            report.count += 1;
            report.members += row.member as u64;
            report.strict_drops += drop as u64;
            if below {
                report.bound_violations.push(row);
            } else if drop != row.member {
                report.disagreements.push(row);
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn s(text: &str) -> Poly {
        parse_poly(text, &contexts::s_ring()).unwrap()
    }

    fn p(text: &str) -> Poly {
        parse_poly(text, &contexts::xy()).unwrap()
    }

    fn ctx(i: u8) -> SContext {
        SContext::new(i).unwrap()
    }

    #[test]
    fn pi_images() {
        let c = ctx(1);
        assert_eq!(c.apply_pi(&s("z1")).unwrap(), p("y - x^5"));
        assert_eq!(c.apply_pi(&s("z2")).unwrap(), p("x^2*y - x^7 - 1"));
        assert_eq!(c.apply_pi(&s("x^3*y + 2")).unwrap(), p("x^3*y + 2"));
        assert_eq!(ctx(2).apply_pi(&s("z1")).unwrap(), p("y + x^5"));
        assert!(SContext::new(3).is_none());
    }

    #[test]
    fn membership_examples() {
        let c = ctx(1);
        assert!(c.ideal_membership(&s("y - x^5")).unwrap());
        assert!(!ctx(2).ideal_membership(&s("y - x^5")).unwrap());
        assert!(c.ideal_membership(&s("x^2*z1 - 1")).unwrap());
        assert!(!c.ideal_membership(&s("x*z2 - 5")).unwrap());
    }

    #[test]
    fn decompositions_of_generators_and_products() {
        let c = ctx(1);
        let (h1, h2) = c.decompose_leading(&s("y - x^5")).unwrap();
        assert!(h1.is_one() && h2.is_zero());
        let (h1, h2) = c.decompose_leading(&s("x^2*z1 - 1")).unwrap();
        assert!(h1.is_zero() && h2.is_one());
        let h = s("x^2*z1*y - y - x^7*z1 + x^5");
        let (h1, h2) = c.decompose_leading(&h).unwrap();
        assert_eq!(&(&h1 * &c.ideal().g1) + &(&h2 * &c.ideal().g2), h);
    }

    #[test]
    fn both_decomposition_routes_agree_on_reexpansion() {
        let c = ctx(2);
        let h = s("(x^2*z1 - 1)*(y + x^5)*z2 + (y + x^5)*x^3*z1^2");
        assert!(h.is_homogeneous(c.omega()));
        let (a1, a2) = c.decompose_leading(&h).unwrap();
        let (b1, b2) = c.decompose_by_linear_solve(&h, 32).unwrap();
        let g = c.ideal();
        assert_eq!(&(&a1 * &g.g1) + &(&a2 * &g.g2), h);
        assert_eq!(&(&b1 * &g.g1) + &(&b2 * &g.g2), h);
    }

    #[test]
    fn non_members_are_rejected() {
        let c = ctx(1);
        assert!(matches!(
            c.decompose_leading(&s("x*z2 - 5")),
            Err(LiftError::NotMember(_))
        ));
        assert!(matches!(
            c.decompose_leading(&s("x + y")),
            Err(LiftError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn lifts_of_examples() {
        let c = ctx(1);
        assert_eq!(c.descend_lift(&p("y - x^5"), None).unwrap(), s("z1"));
        assert_eq!(
            c.descend_lift(&p("x^2*(y - x^5) - 1"), None).unwrap(),
            s("z2")
        );
        assert_eq!(c.descend_lift(&p("x"), None).unwrap(), s("x"));
        assert!(matches!(
            c.descend_lift(&p("0"), None),
            Err(LiftError::ZeroInput)
        ));
        assert!(c.descend_lift(&p("x"), Some(&s("y"))).is_err());
    }

    #[test]
    fn scan_agrees_on_small_run() {
        for i in [1, 2] {
            let r = ctx(i).drop_equivalence_scan(60, 6, -20..=20, 5).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.members > 0 && r.members < r.count);
        }
    }

    #[test]
    fn homogeneous_monomials_have_the_right_weight() {
        for m in homogeneous_monomials(3, 6) {
            assert_eq!(m.weight(&OMEGA), 3);
            assert!(m.total_degree() <= 6);
        }
        assert!(homogeneous_monomials(3, 6).contains(&Monomial(vec![3, 0, 0, 0])));
    }
}
