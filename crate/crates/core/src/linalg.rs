//! Exact linear algebra without fractions.
//!
//! Two engines live here:
//!
//! * [`FractionFreeEchelon`], a dense fraction-free Gauss-Jordan elimination
//!   (Bareiss' one-step division rule) generic over any integer type from
//!   `num-integer`. Every intermediate entry is a minor of the input, so the
//!   divisions are exact.
//! * [`SparseEchelon`] and [`KernelBuilder`], incremental sparse eliminators
//!   over `BigInt` that keep every stored vector primitive (content divided
//!   out). These carry the large filtration computations.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduced echelon form of an integer matrix, computed fraction-free.
///
/// All pivot entries equal `pivot`, and every pivot column is zero outside
/// its pivot row.
#[derive(Clone, Debug)]
pub struct FractionFreeEchelon<T> {
    pub rows: Vec<Vec<T>>,
    pub pivot_cols: Vec<usize>,
    pub pivot: T,
    pub ncols: usize,
}

impl<T: Integer + Clone + Signed> FractionFreeEchelon<T> {
    /// Eliminate `rows` (all of length `ncols`).
    pub fn new(mut rows: Vec<Vec<T>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        let nrows = rows.len();
        let mut prev = T::one();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let piv = rows[r][c].clone();
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let factor = row[c].clone();
                for j in 0..ncols {
                    if j == c {
                        continue;
                    }
                    let v = piv.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                    row[j] = v / prev.clone();
                }
                // Rows that had a zero in column c still get rescaled by
                // piv/prev; the division above is exact either way.
                row[c] = T::zero();
            }
            prev = piv;
            pivot_cols.push(c);
            r += 1;
        }
        FractionFreeEchelon {
            rows,
            pivot_cols,
            pivot: prev,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Integer basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(); self.ncols];
            v[f] = self.pivot.clone();
            for (r, &pc) in self.pivot_cols.iter().enumerate() {
                v[pc] = -self.rows[r][f].clone();
            }
            out.push(primitive_dense(v));
        }
        out
    }
}

fn primitive_dense<T: Integer + Clone + Signed>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
    v
}

/// Rank of an integer matrix.
pub fn rank<T: Integer + Clone + Signed>(rows: Vec<Vec<T>>, ncols: usize) -> usize {
    FractionFreeEchelon::new(rows, ncols).rank()
}

/// Sparse integer vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(u32, BigInt)>;

fn lead(v: &SparseVec) -> Option<&(u32, BigInt)> {
    v.last()
}

/// `a*v - b*w`, merged.
fn combine(a: &BigInt, v: &SparseVec, b: &BigInt, w: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(b * &w[j].1)));
            j += 1;
        } else {
            let x = a * &v[i].1 - b * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn content(vs: &[&SparseVec]) -> BigInt {
    let mut g = BigInt::zero();
    for v in vs {
        for (_, x) in v.iter() {
            g = g.gcd(x);
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn divide(v: &mut SparseVec, g: &BigInt) {
    for (_, x) in v.iter_mut() {
        *x = &*x / g;
    }
}

/// Make `v` primitive with a positive leading entry.
pub fn normalize(v: &mut SparseVec) {
    let mut g = content(&[v]);
    if g.is_zero() {
        return;
    }
    if lead(v).is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        divide(v, &g);
    }
}

/// Eliminate the leading entry of `v` against `p` (same leading index).
fn eliminate(v: &SparseVec, p: &SparseVec) -> (SparseVec, BigInt, BigInt) {
    let a = &lead(v).unwrap().1;
    let b = &lead(p).unwrap().1;
    let g = a.gcd(b);
    let (bs, as_) = (b / &g, a / &g);
    let out = combine(&bs, v, &as_, p);
    debug_assert!(out.last().map(|e| e.0) != lead(v).map(|e| e.0));
    (out, bs, as_)
}

/// Row space of a growing set of sparse vectors, echelonized on the
/// largest index.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: HashMap<u32, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce until the leading index is not a pivot (or the vector is zero).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((k, _)) = lead(&v) {
            match self.pivots.get(k) {
                Some(p) => {
                    v = eliminate(&v, p).0;
                    normalize(&mut v);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        match lead(&r) {
            None => false,
            Some(&(k, _)) => {
                normalize(&mut r);
                self.pivots.insert(k, r);
                true
            }
        }
    }
}

/// Incremental kernel computation: columns are pushed one at a time and a
/// kernel vector (over column ids) is returned whenever a column depends on
/// the earlier ones. Pushing columns in order of a filtration yields a basis
/// adapted to it.
#[derive(Clone, Debug, Default)]
pub struct KernelBuilder {
    pivots: HashMap<u32, (SparseVec, SparseVec)>,
}

impl KernelBuilder {
    pub fn new() -> Self {
        KernelBuilder::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn push(&mut self, col_id: u32, v: SparseVec) -> Option<SparseVec> {
        let mut v = v;
        let mut track: SparseVec = vec![(col_id, BigInt::one())];
        while let Some(&(k, _)) = lead(&v) {
            match self.pivots.get(&k) {
                Some((p, pt)) => {
                    let (nv, bs, as_) = eliminate(&v, p);
                    track = combine(&bs, &track, &as_, pt);
                    v = nv;
                    let g = content(&[&v, &track]);
                    if !g.is_one() && !g.is_zero() {
                        divide(&mut v, &g);
                        divide(&mut track, &g);
                    }
                }
                None => {
                    self.pivots.insert(k, (v, track));
                    return None;
                }
            }
        }
        normalize(&mut track);
        Some(track)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Plain rational Gaussian elimination, used as an independent oracle.
    fn rational_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(bi(x))).collect())
            .collect();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let piv = m[r][c].clone();
            let prow = m[r].clone();
            for row in m.iter_mut().skip(r + 1) {
                let f = row[c].clone() / piv.clone();
                for j in 0..ncols {
                    row[j] = row[j].clone() - f.clone() * prow[j].clone();
                }
            }
            r += 1;
        }
        r
    }

    fn apply(rows: &[Vec<i64>], v: &[BigInt]) -> Vec<BigInt> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(&a, b)| bi(a) * b).sum())
            .collect()
    }

    #[test]
    fn bareiss_small_example() {
        let rows = vec![vec![2, 4, 6], vec![1, 2, 3], vec![1, 0, 1]];
        let ff = FractionFreeEchelon::new(
            rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect(),
            3,
        );
        assert_eq!(ff.rank(), 2);
        let k = ff.kernel();
        assert_eq!(k.len(), 1);
        assert!(apply(&rows, &k[0]).iter().all(Zero::is_zero));
        // same over machine integers
        let ff64 = FractionFreeEchelon::new(rows.clone(), 3);
        assert_eq!(ff64.rank(), 2);
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(vec![(0, bi(1)), (2, bi(2))]));
        assert!(e.insert(vec![(1, bi(3)), (2, bi(1))]));
        assert!(!e.insert(vec![(0, bi(3)), (1, bi(6)), (2, bi(8))]));
        assert!(e.contains(vec![(0, bi(-1)), (2, bi(-2))]));
        assert!(!e.contains(vec![(0, bi(1))]));
        assert_eq!(e.rank(), 2);
    }

    fn to_sparse(col: &[i64]) -> SparseVec {
        col.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i as u32, bi(x)))
            .collect()
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-4i64..5, 5), 1..6)
        ) {
            let ncols = 5;
            let ff = FractionFreeEchelon::new(
                rows.iter().map(|r| r.iter().map(|&x| bi(x)).collect()).collect(),
                ncols,
            );
            prop_assert_eq!(ff.rank(), rational_rank(&rows, ncols));
            let ker = ff.kernel();
            prop_assert_eq!(ker.len(), ncols - ff.rank());
            for k in &ker {
                prop_assert!(apply(&rows, k).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn sparse_engines_agree_with_bareiss(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 1..6)
        ) {
            let ncols = 6;
            let expected = rational_rank(&rows, ncols);
            let mut e = SparseEchelon::new();
            for r in &rows {
                e.insert(to_sparse(r));
            }
            prop_assert_eq!(e.rank(), expected);
            // kernel of the matrix whose columns are `rows`' columns
            let mut kb = KernelBuilder::new();
            let mut kernel = Vec::new();
            for c in 0..ncols {
                let col: Vec<i64> = rows.iter().map(|r| r[c]).collect();
                if let Some(k) = kb.push(c as u32, to_sparse(&col)) {
                    kernel.push(k);
                }
            }
            prop_assert_eq!(kernel.len(), ncols - expected);
            for k in &kernel {
                let mut dense = vec![BigInt::zero(); ncols];
                for (i, x) in k {
                    dense[*i as usize] = x.clone();
                }
                prop_assert!(apply(&rows, &dense).iter().all(Zero::is_zero));
            }
        }
    }
}
