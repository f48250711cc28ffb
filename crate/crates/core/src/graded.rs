//! Truncated pieces `V_{d,N} = { f in Q[x,y] : deg f <= N, delta(f) <= d }`
//! of the graded ring of a degree function, and degree-by-degree counts of
//! the generators that products of lower pieces miss.
//!
//! A piece is the kernel of a linear map: write `f = sum c_ij x^i y^j`,
//! rewrite each monomial in every component's shifted coordinates, and
//! require all terms of weight above `d` to cancel. Columns are fed to a
//! [`KernelBuilder`] in order of total degree, so the kernel basis is adapted
//! to degree and every `V_{d,N'}` with `N' <= N` is a prefix of it.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::Rational;
use crate::contexts;
use crate::degrees::{DegreeFunction, DegreeLike, DegreeSpec};
use crate::error::DegreeError;
use crate::linalg::{normalize, KernelBuilder, SparseEchelon, SparseVec};
use crate::ring::Monomial;
use crate::sample::sample_rng;
use crate::Poly;

/// Order in which the monomials `x^i y^j` become kernel columns. Always by
/// total degree first; within one degree either by `j` or in a seeded
/// random order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnOrder {
    n_max: u32,
    shuffle_seed: Option<u64>,
    /// Position -> `(i, j)`.
    monomials: Vec<(u32, u32)>,
    /// Canonical index `n(n+1)/2 + j` -> position.
    positions: Vec<u32>,
}

fn canonical_index(i: u32, j: u32) -> usize {
    let n = (i + j) as usize;
    n * (n + 1) / 2 + j as usize
}

impl ColumnOrder {
    pub fn canonical(n_max: u32) -> Self {
        Self::build(n_max, None)
    }

    pub fn shuffled(n_max: u32, seed: u64) -> Self {
        Self::build(n_max, Some(seed))
    }

    fn build(n_max: u32, shuffle_seed: Option<u64>) -> Self {
        let mut monomials = Vec::new();
        for n in 0..=n_max {
            let mut block: Vec<(u32, u32)> = (0..=n).map(|j| (n - j, j)).collect();
            if let Some(seed) = shuffle_seed {
                block.shuffle(&mut sample_rng(seed, n as u64));
            }
            monomials.extend(block);
        }
        let mut positions = vec![0; monomials.len()];
        for (p, &(i, j)) in monomials.iter().enumerate() {
            positions[canonical_index(i, j)] = p as u32;
        }
        ColumnOrder {
            n_max,
            shuffle_seed,
            monomials,
            positions,
        }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn shuffle_seed(&self) -> Option<u64> {
        self.shuffle_seed
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, pos: u32) -> (u32, u32) {
        self.monomials[pos as usize]
    }

    pub fn position(&self, i: u32, j: u32) -> u32 {
        self.positions[canonical_index(i, j)]
    }

    fn degree(&self, pos: u32) -> u32 {
        let (i, j) = self.monomial(pos);
        i + j
    }
}

/// One shifted coordinate system: weights `(wx, wy)` on `(x, Y)` and the
/// expansions of `y^j = (Y + shift)^j` as `(a, b, c)` terms `c x^a Y^b`.
struct Component {
    wx: i64,
    wy: i64,
    powers: Vec<Vec<(i32, i32, Rational)>>,
}

impl Component {
    fn new(wx: i64, wy: i64, y_image: &Poly, n_max: u32) -> Self {
        let mut powers = Vec::with_capacity(n_max as usize + 1);
        let mut p = Poly::one(y_image.ctx());
        for _ in 0..=n_max {
            powers.push(p.terms().map(|(m, c)| (m.0[0], m.0[1], c.clone())).collect());
            p = &p * y_image;
        }
        Component { wx, wy, powers }
    }
}

fn components(delta: &DegreeFunction, n_max: u32) -> Result<Vec<Component>, DegreeError> {
    let target = contexts::x_cap_y();
    match delta {
        DegreeFunction::Substituted(s) => {
            let y_image = s.rewrite(&Poly::var(&contexts::xy(), "y")?)?;
            Ok(vec![Component::new(s.x_weight(), -s.y_weight_neg(), &y_image, n_max)])
        }
        DegreeFunction::Weighted(w) if w.ctx.names() == ["x", "y"] => {
            let y_image = Poly::var(&target, "Y")?;
            Ok(vec![Component::new(w.weights.0[0], w.weights.0[1], &y_image, n_max)])
        }
        DegreeFunction::Max(m) => {
            let mut out = Vec::new();
            for c in m.components() {
                out.extend(components(c, n_max)?);
            }
            Ok(out)
        }
        other => Err(DegreeError::Unsupported(other.kind())),
    }
}

/// Basis of `V_{d,N}` as integer vectors over column positions of `order`.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis {
    pub d: i64,
    pub n: u32,
    order: Arc<ColumnOrder>,
    /// Primitive vectors; the last entry of each is its leading column.
    vectors: Vec<SparseVec>,
}

impl GradedPieceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn order(&self) -> &ColumnOrder {
        &self.order
    }

    /// Leading column position of basis vector `k`.
    pub fn lead(&self, k: usize) -> u32 {
        self.vectors[k].last().expect("nonzero basis vector").0
    }

    /// Total degree of basis vector `k`.
    pub fn degree(&self, k: usize) -> u32 {
        self.order.degree(self.lead(k))
    }

    /// Number of basis vectors of total degree at most `n`.
    pub fn dim_at(&self, n: u32) -> usize {
        (0..self.dim()).filter(|&k| self.degree(k) <= n).count()
    }

    pub fn to_poly(&self, v: &SparseVec) -> Poly {
        let ctx = contexts::xy();
        Poly::from_terms(
            &ctx,
            v.iter().map(|(p, c)| {
                let (i, j) = self.order.monomial(*p);
                (
                    Monomial(vec![i as i32, j as i32]),
                    Rational::from_integer(c.clone()),
                )
            }),
        )
        .expect("polynomial monomials")
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.vectors.iter().map(|v| self.to_poly(v)).collect()
    }

    /// Re-evaluates `delta` on every basis element and checks independence.
    pub fn verify(&self, delta: &DegreeFunction) -> Result<bool, DegreeError> {
        let mut ech = SparseEchelon::new();
        for v in &self.vectors {
            if !ech.insert(v.clone()) {
                return Ok(false);
            }
        }
        for f in self.basis() {
            if f.total_degree() > crate::Degree::Finite(self.n as i64)
                || delta.degree(&f)? > crate::Degree::Finite(self.d)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Shared per-`delta` data for computing several pieces over one column order.
pub struct PieceEngine {
    delta: DegreeFunction,
    order: Arc<ColumnOrder>,
    components: Vec<Component>,
    /// lcm of the coefficient denominators of `y^j` over all components.
    scale: Vec<BigInt>,
    a_min: i32,
    a_span: u32,
}

impl PieceEngine {
    pub fn new(delta: &DegreeFunction, order: ColumnOrder) -> Result<Self, DegreeError> {
        let n_max = order.n_max();
        let components = components(delta, n_max)?;
        let mut scale = vec![BigInt::one(); n_max as usize + 1];
        let (mut a_min, mut a_max) = (0i32, 0i32);
        for c in &components {
            for (j, terms) in c.powers.iter().enumerate() {
                for (a, _, coef) in terms {
                    scale[j] = scale[j].lcm(coef.denom());
                    a_min = a_min.min(*a);
                    a_max = a_max.max(*a);
                }
            }
        }
        Ok(PieceEngine {
            delta: delta.clone(),
            order: Arc::new(order),
            components,
            scale,
            a_min,
            a_span: (a_max - a_min) as u32 + n_max + 1,
        })
    }

    pub fn delta(&self) -> &DegreeFunction {
        &self.delta
    }

    pub fn order(&self) -> &ColumnOrder {
        &self.order
    }

    fn row_key(&self, comp: usize, a: i32, b: i32) -> u32 {
        let rows_per_a = self.order.n_max() + 1;
        ((comp as u32 * self.a_span + (a - self.a_min) as u32) * rows_per_a) + b as u32
    }

    /// Terms of weight above `d` in the rewrites of column `pos`, scaled to
    /// integers.
    fn column(&self, pos: u32, d: i64) -> SparseVec {
        let (i, j) = self.order.monomial(pos);
        let lambda = Rational::from_integer(self.scale[j as usize].clone());
        let mut out: SparseVec = Vec::new();
        for (k, comp) in self.components.iter().enumerate() {
            for (a, b, c) in &comp.powers[j as usize] {
                let a = a + i as i32;
                if comp.wx * a as i64 + comp.wy * *b as i64 > d {
                    let v = c * &lambda;
                    debug_assert!(v.is_integer());
                    out.push((self.row_key(k, a, *b), v.to_integer()));
                }
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Basis of `V_{d,N}` with `N` the order's bound.
    pub fn piece(&self, d: i64) -> GradedPieceBasis {
        let mut builder = KernelBuilder::new();
        let mut vectors = Vec::new();
        for pos in 0..self.order.len() as u32 {
            if let Some(t) = builder.push(pos, self.column(pos, d)) {
                let mut v: SparseVec = t
                    .into_iter()
                    .map(|(p, c)| {
                        let (_, j) = self.order.monomial(p);
                        (p, c * &self.scale[j as usize])
                    })
                    .collect();
                normalize(&mut v);
                vectors.push(v);
            }
        }
        GradedPieceBasis {
            d,
            n: self.order.n_max(),
            order: self.order.clone(),
            vectors,
        }
    }
}

/// Basis of `V_{d,N}` in the canonical column order, re-verified by
/// evaluating `delta` on each element.
pub fn graded_piece(delta: &DegreeFunction, d: i64, n: u32) -> Result<GradedPieceBasis, DegreeError> {
    let piece = PieceEngine::new(delta, ColumnOrder::canonical(n))?.piece(d);
    if !piece.verify(delta)? {
        return Err(DegreeError::InvalidSpec(format!(
            "piece d = {d}, N = {n} failed re-verification"
        )));
    }
    Ok(piece)
}

/// `dim V_{d,N}(max)` next to `dim V_{d,N}(delta_1) ∩ V_{d,N}(delta_2)`,
/// the latter from separately computed pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntersectionCheck {
    pub d: i64,
    pub dim_max: usize,
    pub dim_intersection: usize,
}

pub fn intersection_check(
    max: &DegreeFunction,
    d: i64,
    n: u32,
) -> Result<IntersectionCheck, DegreeError> {
    let DegreeFunction::Max(m) = max else {
        return Err(DegreeError::Unsupported(max.kind()));
    };
    let order = || ColumnOrder::canonical(n);
    let dim_max = PieceEngine::new(max, order())?.piece(d).dim();
    let mut ech = SparseEchelon::new();
    let mut sum_dims = 0;
    for c in m.components() {
        let p = PieceEngine::new(c, order())?.piece(d);
        sum_dims += p.dim();
        for v in p.vectors() {
            ech.insert(v.clone());
        }
    }
    let dim_intersection = match m.components().len() {
        1 => sum_dims,
        2 => sum_dims - ech.rank(),
        _ => return Err(DegreeError::Unsupported("max of more than two components")),
    };
    Ok(IntersectionCheck {
        d,
        dim_max,
        dim_intersection,
    })
}

/// Truncation of the generator count: degrees `0..=d_max`, total degree at
/// most `n`, with a confirming run at `n + delta_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TruncationParams {
    pub d_max: u32,
    pub n: u32,
    pub delta_n: u32,
}

impl TruncationParams {
    pub fn new(d_max: u32, n: u32, delta_n: u32) -> Result<Self, DegreeError> {
        if d_max < 1 || n < 1 {
            return Err(DegreeError::InvalidSpec("dMax and N must be at least 1".into()));
        }
        Ok(TruncationParams { d_max, n, delta_n })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorRow {
    pub d: u32,
    pub dim: usize,
    pub product_span_dim: usize,
    pub new_generators: usize,
    /// The count is unchanged when the truncation grows to `N + deltaN`.
    pub stable_flag: bool,
    pub dim_next: usize,
    pub new_generators_next: usize,
    /// `dim` itself is unchanged at `N + deltaN`.
    pub piece_stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TableMetadata {
    pub degree_function: DegreeSpec,
    pub n: u32,
    pub delta_n: u32,
    pub d_max: u32,
    /// Seed of the within-degree column shuffle; absent for the canonical
    /// order.
    pub seed: Option<u64>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorTable {
    pub metadata: TableMetadata,
    pub rows: Vec<GeneratorRow>,
}

impl GeneratorTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// New-generator counts, in row order.
    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.new_generators).collect()
    }
}

/// Sparse product of two basis vectors, dropping nothing (the caller makes
/// sure the total degree fits the order).
fn product(order: &ColumnOrder, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
    for (p, a) in u {
        let (i1, j1) = order.monomial(*p);
        for (q, b) in v {
            let (i2, j2) = order.monomial(*q);
            let pos = order.position(i1 + i2, j1 + j2);
            *acc.entry(pos).or_insert_with(BigInt::zero) += a * b;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Pieces `V_{0..=d_max, N}` plus, per piece, the indices of the basis
/// vectors spanning a complement of the previous piece.
struct Tower {
    pieces: Vec<GradedPieceBasis>,
    complements: Vec<Vec<usize>>,
}

impl Tower {
    fn new(engine: &PieceEngine, d_max: u32) -> Self {
        let pieces: Vec<GradedPieceBasis> = (0..=d_max as i64)
            .into_par_iter()
            .map(|d| engine.piece(d))
            .collect();
        // A kernel basis built in a fixed column order has distinct leading
        // columns, and its set of leads depends only on the subspace. So the
        // vectors of V_e whose lead is not a lead of V_{e-1} complement it,
        // degree by degree.
        let complements = (0..pieces.len())
            .map(|e| {
                let prev: HashSet<u32> = match e {
                    0 => HashSet::new(),
                    _ => (0..pieces[e - 1].dim()).map(|k| pieces[e - 1].lead(k)).collect(),
                };
                (0..pieces[e].dim())
                    .filter(|&k| !prev.contains(&pieces[e].lead(k)))
                    .collect()
            })
            .collect();
        Tower {
            pieces,
            complements,
        }
    }

    /// `(dim V_{d,n}, product-span dimension)` at truncation `n`.
    fn count(&self, d: usize, n: u32) -> (usize, usize) {
        let piece = &self.pieces[d];
        let dim = piece.dim_at(n);
        if d == 0 {
            return (dim, dim.min(1));
        }
        let order = piece.order();
        let mut ech = SparseEchelon::new();
        let below = &self.pieces[d - 1];
        for k in 0..below.dim() {
            if below.degree(k) <= n {
                ech.insert(below.vectors()[k].clone());
            }
        }
        for e in 1..=d / 2 {
            let (pe, pf) = (&self.pieces[e], &self.pieces[d - e]);
            for (a, &k) in self.complements[e].iter().enumerate() {
                for (b, &l) in self.complements[d - e].iter().enumerate() {
                    if e == d - e && b < a {
                        continue;
                    }
                    if pe.degree(k) + pf.degree(l) > n {
                        continue;
                    }
                    ech.insert(product(order, &pe.vectors()[k], &pf.vectors()[l]));
                }
            }
        }
        (dim, ech.rank())
    }
}

/// Generator counts for `delta` over `0..=d_max` at truncation `N`, each row
/// confirmed at `N + deltaN`. Pass a seed to shuffle the column order within
/// each degree; the counts must not depend on it.
pub fn new_generator_counts(
    delta: &DegreeFunction,
    trunc: TruncationParams,
    shuffle_seed: Option<u64>,
) -> Result<GeneratorTable, DegreeError> {
    let n_max = trunc.n + trunc.delta_n;
    let order = match shuffle_seed {
        Some(seed) => ColumnOrder::shuffled(n_max, seed),
        None => ColumnOrder::canonical(n_max),
    };
    let engine = PieceEngine::new(delta, order)?;
    let tower = Tower::new(&engine, trunc.d_max);
    let rows = (0..=trunc.d_max as usize)
        .into_par_iter()
        .map(|d| {
            let (dim, span) = tower.count(d, trunc.n);
            let (dim_next, span_next) = tower.count(d, n_max);
            let gens = dim - span;
            let gens_next = dim_next - span_next;
            GeneratorRow {
                d: d as u32,
                dim,
                product_span_dim: span,
                new_generators: gens,
                stable_flag: gens == gens_next,
                dim_next,
                new_generators_next: gens_next,
                piece_stable: dim == dim_next,
            }
        })
        .collect();
    Ok(GeneratorTable {
        metadata: TableMetadata {
            degree_function: delta.to_spec(),
            n: trunc.n,
            delta_n: trunc.delta_n,
            d_max: trunc.d_max,
            seed: shuffle_seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        rows,
    })
}
