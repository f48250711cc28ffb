//! Naive reference implementations used as oracles. Nothing here calls into
//! the library's arithmetic: polynomials are plain maps from exponent
//! vectors to rationals, and ranks come from textbook Gaussian elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gradus_core::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Dense = BTreeMap<Vec<i32>, BigRational>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_poly(p: &Poly) -> Dense {
    p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect()
}

pub fn dense(terms: &[(&[i32], i64)]) -> Dense {
    let mut out = Dense::new();
    for (e, c) in terms {
        add_term(&mut out, e.to_vec(), q(*c));
    }
    out
}

pub fn add_term(p: &mut Dense, e: Vec<i32>, c: BigRational) {
    let slot = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), c.clone());
    }
    out
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn pow(a: &Dense, k: u32, nvars: usize) -> Dense {
    let mut out = dense(&[(&vec![0; nvars], 1)]);
    for _ in 0..k {
        out = mul(&out, a);
    }
    out
}

pub fn weighted_degree(p: &Dense, w: &[i64]) -> Option<i64> {
    p.keys()
        .map(|e| e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum())
        .max()
}

/// `f(x, Y + shift(x))` for `f` in two variables and a shift in `x` alone,
/// by the binomial theorem.
pub fn rewrite(f: &Dense, shift: &Dense) -> Dense {
    let mut out = Dense::new();
    for (e, c) in f {
        let (a, b) = (e[0], e[1] as u32);
        for k in 0..=b {
            let binom = binomial(b, k);
            let rest = pow(shift, b - k, 2);
            for (es, cs) in rest {
                add_term(&mut out, vec![a + es[0], k as i32], c * &binom * cs);
            }
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> BigRational {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(r)
}

/// `delta(f)` for the weighted degree `(wx, -wy_neg)` after `y = Y + shift`.
pub fn substituted_degree(f: &Dense, shift: &Dense, wx: i64, wy_neg: i64) -> Option<i64> {
    weighted_degree(&rewrite(f, shift), &[wx, -wy_neg])
}

pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..ncols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim { f : deg f <= n, max_k delta_k(f) <= d }` by dense elimination over
/// all monomials of degree at most `n`.
pub fn brute_force_piece_dim(shifts: &[(Dense, i64, i64)], d: i64, n: i32) -> usize {
    let monos: Vec<(i32, i32)> = (0..=n)
        .flat_map(|t| (0..=t).map(move |j| (t - j, j)))
        .collect();
    let mut rows: BTreeMap<(usize, Vec<i32>), Vec<BigRational>> = BTreeMap::new();
    for (col, &(i, j)) in monos.iter().enumerate() {
        for (k, (shift, wx, wy_neg)) in shifts.iter().enumerate() {
            let f = dense(&[(&[i, j], 1)]);
            for (e, c) in rewrite(&f, shift) {
                if wx * e[0] as i64 - wy_neg * e[1] as i64 > d {
                    let row = rows
                        .entry((k, e))
                        .or_insert_with(|| vec![BigRational::zero(); monos.len()]);
                    row[col] = c;
                }
            }
        }
    }
    monos.len() - rank(rows.into_values().collect())
}
