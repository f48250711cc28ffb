//! Brute-force oracles for the frozen tables.
//!
//! These are deliberately naive and share no linear algebra with the core:
//! pieces come from Gauss-Jordan elimination of the full constraint matrix,
//! the product span uses every pair of basis vectors from every pair of
//! lower pieces, and Hilbert-basis irreducibility is tested by trying every
//! smaller monoid element. They only run under `--regen-oracles`.

use std::collections::{BTreeMap, HashMap};

use gradus_core::degrees::SubstitutedWeightedDegree;
use gradus_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Column index -> coefficient.
type Vector = BTreeMap<u32, Rational>;

/// One row of a generator table as stored in the oracle files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleRow {
    pub d: u32,
    pub dim: usize,
    pub product_span_dim: usize,
    pub new_generators: usize,
    pub dim_next: usize,
    pub new_generators_next: usize,
    pub stable_flag: bool,
}

/// `x^i y^j` with `i + j <= n_max`, ordered by total degree then `j`.
struct Columns {
    monos: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), u32>,
}

impl Columns {
    fn new(n_max: u32) -> Self {
        let mut monos = Vec::new();
        for n in 0..=n_max {
            for j in 0..=n {
                monos.push((n - j, j));
            }
        }
        let index = monos.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
        Columns { monos, index }
    }

    fn degree(&self, col: u32) -> u32 {
        let (i, j) = self.monos[col as usize];
        i + j
    }
}

fn laurent_mul(a: &BTreeMap<i32, Rational>, b: &BTreeMap<i32, Rational>) -> BTreeMap<i32, Rational> {
    let mut out: BTreeMap<i32, Rational> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

/// `x^i (Y + s(x))^j` as a map `(a, b) -> coeff` for `x^a Y^b`.
fn expand(i: u32, j: u32, shift_powers: &[BTreeMap<i32, Rational>]) -> BTreeMap<(i32, i32), Rational> {
    let mut out = BTreeMap::new();
    for k in 0..=j {
        let c = Rational::from_integer(binomial(j, k));
        for (e, s) in &shift_powers[(j - k) as usize] {
            out.insert((i as i32 + e, k as i32), &c * s);
        }
    }
    out
}

/// Incremental Gauss-Jordan elimination over the rationals. Every pivot row
/// has coefficient 1 on its pivot, which is its smallest column, and zeros
/// on every other pivot column.
#[derive(Default)]
struct Rref {
    rows: BTreeMap<u32, Vector>,
}

impl Rref {
    fn reduce(&self, mut v: Vector) -> Vector {
        let hits: Vec<u32> = v.keys().filter(|c| self.rows.contains_key(c)).copied().collect();
        for c in hits {
            let Some(f) = v.get(&c).cloned() else { continue };
            for (k, a) in &self.rows[&c] {
                let e = v.entry(*k).or_insert_with(Rational::zero);
                *e -= &f * a;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vector) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for c in v.values_mut() {
            *c *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&p).cloned() {
                for (k, a) in &v {
                    let e = row.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * a;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.insert(p, v);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// A kernel basis vector and its total degree.
struct Element {
    degree: u32,
    vector: Vector,
}

fn piece(
    d: i64,
    cols: &Columns,
    expansions: &[Vec<BTreeMap<(i32, i32), Rational>>],
    weights: &[(i64, i64)],
) -> Vec<Element> {
    let mut rows: BTreeMap<(usize, i32, i32), Vector> = BTreeMap::new();
    for (c, (exp, &(wx, wy))) in expansions.iter().zip(weights).enumerate() {
        for (col, terms) in exp.iter().enumerate() {
            for (&(a, b), coeff) in terms {
                if wx * a as i64 - wy * b as i64 > d {
                    rows.entry((c, a, b)).or_default().insert(col as u32, coeff.clone());
                }
            }
        }
    }
    let mut rref = Rref::default();
    for row in rows.into_values() {
        rref.insert(row);
    }
    (0..cols.monos.len() as u32)
        .filter(|c| !rref.rows.contains_key(c))
        .map(|free| {
            let mut v = Vector::new();
            v.insert(free, Rational::one());
            for (p, row) in &rref.rows {
                if let Some(a) = row.get(&free) {
                    v.insert(*p, -a.clone());
                }
            }
            Element {
                degree: cols.degree(free),
                vector: v,
            }
        })
        .collect()
}

fn product(cols: &Columns, u: &Vector, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (p, a) in u {
        let (i1, j1) = cols.monos[*p as usize];
        for (q, b) in v {
            let (i2, j2) = cols.monos[*q as usize];
            let k = cols.index[&(i1 + i2, j1 + j2)];
            *out.entry(k).or_insert_with(Rational::zero) += a * b;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(dim V_{d,n}, dim of the span of V_{d-1,n} and all products)`.
fn count(pieces: &[Vec<Element>], cols: &Columns, d: usize, n: u32) -> (usize, usize) {
    let low = |e: usize| pieces[e].iter().filter(move |x| x.degree <= n);
    let dim = low(d).count();
    let mut span = Rref::default();
    if d == 0 {
        let one = Vector::from([(cols.index[&(0, 0)], Rational::one())]);
        if dim > 0 {
            span.insert(one);
        }
        return (dim, span.rank());
    }
    for x in low(d - 1) {
        span.insert(x.vector.clone());
    }
    for e in 1..d {
        for a in low(e) {
            for b in low(d - e) {
                if span.rank() == dim {
                    return (dim, dim);
                }
                if a.degree + b.degree <= n {
                    span.insert(product(cols, &a.vector, &b.vector));
                }
            }
        }
    }
    (dim, span.rank())
}

/// The generator table of `max` over `components` (a single component for
/// `delta_i` alone), recomputed from scratch.
pub fn generator_table(
    components: &[SubstitutedWeightedDegree],
    d_max: u32,
    n: u32,
    delta_n: u32,
) -> Vec<OracleRow> {
    let n_max = n + delta_n;
    let cols = Columns::new(n_max);
    let weights: Vec<(i64, i64)> = components
        .iter()
        .map(|c| (c.x_weight(), c.y_weight_neg()))
        .collect();
    let expansions: Vec<Vec<BTreeMap<(i32, i32), Rational>>> = components
        .iter()
        .map(|c| {
            let shift: BTreeMap<i32, Rational> = c
                .shift()
                .terms()
                .map(|(m, k)| (m.0[0], k.clone()))
                .collect();
            let mut powers = vec![BTreeMap::from([(0, Rational::one())])];
            for _ in 0..n_max {
                let next = laurent_mul(powers.last().expect("nonempty"), &shift);
                powers.push(next);
            }
            cols.monos.iter().map(|&(i, j)| expand(i, j, &powers)).collect()
        })
        .collect();
    let pieces: Vec<Vec<Element>> = (0..=d_max as i64)
        .into_par_iter()
        .map(|d| piece(d, &cols, &expansions, &weights))
        .collect();
    (0..=d_max as usize)
        .into_par_iter()
        .map(|d| {
            let (dim, span) = count(&pieces, &cols, d, n);
            let (dim_next, span_next) = count(&pieces, &cols, d, n_max);
            OracleRow {
                d: d as u32,
                dim,
                product_span_dim: span,
                new_generators: dim - span,
                dim_next,
                new_generators_next: dim_next - span_next,
                stable_flag: dim - span == dim_next - span_next,
            }
        })
        .collect()
}

/// `x^k y^l z1^m1 z2^m2 t^d` lies in the monoid when its omega-degree is at
/// most its t-degree.
fn admissible(v: &[u32; 5]) -> bool {
    let [k, l, m1, m2, d] = v.map(i64::from);
    k + 5 * l <= 2 * m1 + m2 + d
}

fn reducible(v: &[u32; 5]) -> bool {
    let mut u = [0u32; 5];
    loop {
        // Advance u like an odometer bounded by v.
        let mut i = 0;
        loop {
            if i == 5 {
                return false;
            }
            if u[i] < v[i] {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if u == *v {
            return false;
        }
        let rest: [u32; 5] = std::array::from_fn(|k| v[k] - u[k]);
        if admissible(&u) && admissible(&rest) {
            return true;
        }
    }
}

/// Irreducible nonzero monoid elements inside `[0, bound]^5`, sorted.
pub fn hilbert_irreducibles(bound: u32) -> Vec<[u32; 5]> {
    let mut all = Vec::new();
    for k in 0..=bound {
        for l in 0..=bound {
            for m1 in 0..=bound {
                for m2 in 0..=bound {
                    for d in 0..=bound {
                        let v = [k, l, m1, m2, d];
                        if v != [0; 5] && admissible(&v) {
                            all.push(v);
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<[u32; 5]> = all.into_par_iter().filter(|v| !reducible(v)).collect();
    out.sort();
    out
}
