//! The exponent monoid of `S[t]` cut out by `omega <= t-degree`, its Hilbert
//! basis, and the check that the images of that basis generate the graded
//! pieces of `Q[x,y]^{delta_i}`.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::contexts;
use crate::degrees::DegreeFunction;
use crate::error::LiftError;
use crate::graded::{ColumnOrder, PieceEngine, TruncationParams};
use crate::lifting::{SContext, OMEGA};
use crate::linalg::{normalize, SparseEchelon, SparseVec};
use crate::Poly;

/// `(k, l, m1, m2, d)`: the monomial `x^k y^l z1^m1 z2^m2 t^d`.
pub type MonoidElement = [u32; 5];

/// Coefficients of the defining inequality `k + 5l - 2m1 - m2 - d <= 0`.
pub const CONSTRAINT: [i64; 5] = [OMEGA[0], OMEGA[1], OMEGA[2], OMEGA[3], -1];

pub fn in_monoid(v: &MonoidElement) -> bool {
    v.iter().zip(CONSTRAINT).map(|(&a, w)| a as i64 * w).sum::<i64>() <= 0
}

/// Extreme rays of the cone `{ v >= 0 : CONSTRAINT . v <= 0 }`: unit vectors
/// on nonpositive coordinates, and for each positive/negative pair the
/// primitive vector on which the constraint is tight.
pub fn extreme_rays() -> Vec<MonoidElement> {
    let mut rays = Vec::new();
    for (i, &w) in CONSTRAINT.iter().enumerate() {
        if w <= 0 {
            let mut r = [0; 5];
            r[i] = 1;
            rays.push(r);
        }
    }
    for (i, &wi) in CONSTRAINT.iter().enumerate().filter(|(_, w)| **w > 0) {
        for (j, &wj) in CONSTRAINT.iter().enumerate().filter(|(_, w)| **w < 0) {
            let g = wi.gcd(&wj);
            let mut r = [0; 5];
            r[i] = (-wj / g) as u32;
            r[j] = (wi / g) as u32;
            rays.push(r);
        }
    }
    rays.sort();
    rays
}

/// Per-coordinate strict upper bound for Hilbert-basis elements: each lies in
/// the zonotope spanned by the extreme rays with coefficients in `[0, 1)`.
pub fn zonotope_bound() -> [u32; 5] {
    let mut out = [0; 5];
    for r in extreme_rays() {
        for (o, x) in out.iter_mut().zip(r) {
            *o += x;
        }
    }
    out
}

/// Irreducible elements of the monoid inside the box `[0, bound]^5`, with
/// the checks that certify them as the full Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertBasis {
    pub bound: u32,
    pub elements: Vec<MonoidElement>,
    pub rays: Vec<MonoidElement>,
    /// The box contains every point of the ray zonotope.
    pub bound_sufficient: bool,
    /// Every monoid element in the box is a sum of `elements`.
    pub box_complete: bool,
}

impl HilbertBasis {
    pub fn is_certified(&self) -> bool {
        self.bound_sufficient && self.box_complete && !self.elements.is_empty()
    }
}

fn le(a: &MonoidElement, b: &MonoidElement) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub(a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
    std::array::from_fn(|i| a[i] - b[i])
}

fn box_points(bound: u32) -> Vec<MonoidElement> {
    let r = 0..=bound;
    let mut pts = Vec::new();
    for k in r.clone() {
        for l in r.clone() {
            for m1 in r.clone() {
                for m2 in r.clone() {
                    for d in r.clone() {
                        let v = [k, l, m1, m2, d];
                        if in_monoid(&v) {
                            pts.push(v);
                        }
                    }
                }
            }
        }
    }
    pts.sort_by_key(|v| (v.iter().sum::<u32>(), *v));
    pts
}

/// Enumerates the box and keeps the nonzero elements that are not an earlier
/// irreducible plus a monoid element. Never fails; see
/// [`HilbertBasis::is_certified`].
pub fn enumerate_irreducibles(bound: u32) -> HilbertBasis {
    let pts = box_points(bound);
    let mut elements: Vec<MonoidElement> = Vec::new();
    for v in pts.iter().skip(1) {
        let reducible = elements
            .iter()
            .any(|h| le(h, v) && in_monoid(&sub(v, h)));
        if !reducible {
            elements.push(*v);
        }
    }
    elements.sort();

    // Independent pass: decomposability by dynamic programming over sums.
    let mut decomposable: HashMap<MonoidElement, bool> = HashMap::new();
    for v in &pts {
        let ok = v.iter().all(|&x| x == 0)
            || elements
                .iter()
                .any(|h| le(h, v) && decomposable.get(&sub(v, h)).copied().unwrap_or(false));
        decomposable.insert(*v, ok);
    }
    let box_complete = decomposable.values().all(|&b| b);
    let needed = zonotope_bound();
    HilbertBasis {
        bound,
        rays: extreme_rays(),
        bound_sufficient: needed.iter().all(|&n| n <= bound + 1),
        box_complete,
        elements,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("bound {bound} is too small: coordinates up to {needed:?} (exclusive) are required")]
    BoundTooSmall { bound: u32, needed: [u32; 5] },
    #[error("box of size {0} is not generated by the irreducibles found")]
    Incomplete(u32),
}

/// The certified Hilbert basis, enumerated inside `[0, bound]^5`.
pub fn hilbert_basis(bound: u32) -> Result<HilbertBasis, HilbertError> {
    let hb = enumerate_irreducibles(bound);
    if !hb.bound_sufficient {
        return Err(HilbertError::BoundTooSmall {
            bound,
            needed: zonotope_bound(),
        });
    }
    if !hb.box_complete {
        return Err(HilbertError::Incomplete(bound));
    }
    Ok(hb)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpanRow {
    pub d: u32,
    /// `dim V_{d,N}(delta_i)`.
    pub piece_dim: usize,
    /// Monomials of `t`-degree `d` reached as sums of basis elements.
    pub monomials: usize,
    pub image_rank: usize,
    pub spanned: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationReport {
    pub index: u8,
    pub trunc: TruncationParams,
    pub basis_size: usize,
    pub rows: Vec<SpanRow>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.spanned)
    }
}

fn image_degree(v: &MonoidElement) -> u32 {
    v[0] + v[1] + 5 * v[2] + 7 * v[3]
}

/// Checks that `V_{d,N}(delta_i)` is spanned by the `pi_i`-images of the
/// monomials that are sums of `basis` elements, for every `d <= dMax`.
/// Images are taken up to total degree `N + deltaN`, since elements of
/// degree at most `N` can need cancellation among higher-degree images.
pub fn verify_ri_generation(
    ctx: &SContext,
    trunc: TruncationParams,
    basis: &HilbertBasis,
) -> Result<GenerationReport, LiftError> {
    let cap = trunc.n + trunc.delta_n;
    let d_max = trunc.d_max;

    // All sums of basis elements with t-degree <= dMax and image degree <= cap.
    let mut reached: BTreeSet<MonoidElement> = BTreeSet::new();
    let mut frontier = vec![[0u32; 5]];
    while let Some(v) = frontier.pop() {
        for h in &basis.elements {
            let w: MonoidElement = std::array::from_fn(|i| v[i] + h[i]);
            if w[4] <= d_max && image_degree(&w) <= cap && reached.insert(w) {
                frontier.push(w);
            }
        }
    }

    let order = ColumnOrder::canonical(cap);
    let delta = DegreeFunction::Substituted(ctx.delta().clone());
    let engine = PieceEngine::new(&delta, order.clone())?;
    let s = ctx.ring().clone();
    let vars: Vec<Poly> = ["x", "y", "z1", "z2"]
        .iter()
        .map(|v| ctx.apply_pi(&Poly::var(&s, v).expect("variable of S")))
        .collect::<Result<_, _>>()?;
    let xy = contexts::xy();
    let powers: Vec<Vec<Poly>> = vars
        .iter()
        .map(|p| {
            let mut out = vec![Poly::one(&xy)];
            for _ in 0..cap {
                let next = out.last().expect("nonempty") * p;
                out.push(next);
            }
            out
        })
        .collect();
    let to_vec = |f: &Poly| -> SparseVec {
        let mut v: SparseVec = f
            .terms()
            .map(|(m, c)| {
                debug_assert!(c.is_integer());
                (order.position(m.0[0] as u32, m.0[1] as u32), c.to_integer())
            })
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        normalize(&mut v);
        v
    };

    let rows = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let piece = engine.piece(d as i64);
            let mut ech = SparseEchelon::new();
            let mut monomials = 0;
            for v in reached.iter().filter(|v| v[4] == d) {
                monomials += 1;
                let img = &(&powers[0][v[0] as usize] * &powers[1][v[1] as usize])
                    * &(&powers[2][v[2] as usize] * &powers[3][v[3] as usize]);
                ech.insert(to_vec(&img));
            }
            let image_rank = ech.rank();
            let targets: Vec<&SparseVec> = (0..piece.dim())
                .filter(|&k| piece.degree(k) <= trunc.n)
                .map(|k| &piece.vectors()[k])
                .collect();
            let spanned = image_rank > 0 && targets.iter().all(|t| ech.contains((*t).clone()));
            SpanRow {
                d,
                piece_dim: targets.len(),
                monomials,
                image_rank,
                spanned,
            }
        })
        .collect();
    Ok(GenerationReport {
        index: ctx.index(),
        trunc,
        basis_size: basis.elements.len(),
        rows,
    })
}
