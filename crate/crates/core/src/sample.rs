//! Reproducible random polynomials for property scans.
//!
//! Sample `i` of a run with seed `s` is drawn from its own ChaCha stream, so
//! scans can be split across threads and still produce identical reports.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::Rational;
use crate::ring::{Ctx, Monomial, WeightVector};
use crate::Poly;

/// Independent generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sparse random polynomials: up to `max_terms` terms, each exponent vector
/// uniform among those with nonnegative entries summing to at most
/// `degree_bound`, coefficients `n/d` with `n` in `[-9, 9] \ {0}` and `d` in
/// `1..=3`.
#[derive(Clone, Debug)]
pub struct PolySampler {
    pub ctx: Ctx,
    pub degree_bound: u32,
    pub max_terms: usize,
}

impl PolySampler {
    pub fn new(ctx: Ctx, degree_bound: u32, max_terms: usize) -> Self {
        PolySampler {
            ctx,
            degree_bound,
            max_terms: max_terms.max(1),
        }
    }

    fn exponent<R: Rng>(&self, rng: &mut R) -> Monomial {
        let n = self.ctx.nvars();
        loop {
            let e: Vec<i32> = (0..n)
                .map(|_| rng.gen_range(0..=self.degree_bound as i32))
                .collect();
            if e.iter().sum::<i32>() <= self.degree_bound as i32 {
                return Monomial(e);
            }
        }
    }

    fn coefficient<R: Rng>(rng: &mut R) -> Rational {
        let mut n = rng.gen_range(-9i64..=8);
        if n >= 0 {
            n += 1;
        }
        let d = rng.gen_range(1i64..=3);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// A random polynomial; zero only when repeated monomials cancel.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Poly {
        let k = rng.gen_range(1..=self.max_terms);
        let terms: Vec<(Monomial, Rational)> = (0..k)
            .map(|_| (self.exponent(rng), Self::coefficient(rng)))
            .collect();
        Poly::from_terms(&self.ctx, terms).expect("sampled monomials are admissible")
    }

    pub fn sample_nonzero<R: Rng>(&self, rng: &mut R) -> Poly {
        loop {
            let p = self.sample(rng);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A random weighted-homogeneous polynomial whose weighted degree lies in
    /// `weights`. The first monomial landing in range fixes the degree; up to
    /// `max_terms - 1` further monomials of that degree are collected from
    /// `attempts` draws. `None` if nothing lands in range.
    pub fn sample_homogeneous<R: Rng>(
        &self,
        rng: &mut R,
        w: &WeightVector,
        weights: RangeInclusive<i64>,
        attempts: usize,
    ) -> Option<Poly> {
        let mut terms = Vec::new();
        let mut target = None;
        for _ in 0..attempts {
            let m = self.exponent(rng);
            let d = m.weight(w.as_slice());
            match target {
                None if weights.contains(&d) => target = Some(d),
                Some(t) if t == d => {}
                _ => continue,
            }
            terms.push((m, Self::coefficient(rng)));
            if terms.len() == self.max_terms {
                break;
            }
        }
        let p = Poly::from_terms(&self.ctx, terms).expect("admissible");
        (!p.is_zero()).then_some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contexts;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = PolySampler::new(contexts::xy(), 6, 5);
        let a = s.sample(&mut sample_rng(42, 3));
        let b = s.sample(&mut sample_rng(42, 3));
        let c = s.sample(&mut sample_rng(42, 4));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn respects_degree_bound() {
        let s = PolySampler::new(contexts::s_ring(), 4, 6);
        for i in 0..50 {
            let p = s.sample(&mut sample_rng(7, i));
            assert!(p.total_degree() <= crate::Degree::Finite(4));
            assert!(p.is_polynomial());
        }
    }

    #[test]
    fn homogeneous_samples_are_homogeneous() {
        let s = PolySampler::new(contexts::s_ring(), 8, 4);
        let w = WeightVector(vec![1, 5, -2, -1]);
        let mut rng = sample_rng(1, 0);
        let p = s.sample_homogeneous(&mut rng, &w, 3..=3, 2000).unwrap();
        assert!(p.is_homogeneous(&w));
        assert_eq!(p.weighted_degree(&w), crate::Degree::Finite(3));
    }
}
