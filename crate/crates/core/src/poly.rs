//! Sparse multivariate Laurent polynomials over an exact coefficient ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::coeff::{write_signed_term, Coefficient, Rational};
use crate::degree::Degree;
use crate::error::PolyError;
use crate::ring::{Ctx, Monomial, RingContext, WeightVector};

/// A Laurent polynomial: a finite map from exponent vectors to nonzero
/// coefficients, tied to a ring context.
#[derive(Clone)]
pub struct LaurentPoly<C> {
    ctx: Ctx,
    terms: BTreeMap<Monomial, C>,
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn mismatch(a: &Ctx, b: &Ctx) -> PolyError {
    PolyError::ContextMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(ctx: &Ctx) -> Self {
        LaurentPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Ctx, c: C) -> Self {
        Self::term(ctx, Monomial::one(ctx.nvars()), c)
    }

    /// Single term. Panics if the monomial does not fit the context; use
    /// [`LaurentPoly::from_terms`] for checked construction.
    pub fn term(ctx: &Ctx, m: Monomial, c: C) -> Self {
        assert!(ctx.admits(&m), "monomial {m:?} not admissible in {ctx}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The variable `name` to the first power.
    pub fn var(ctx: &Ctx, name: &str) -> Result<Self, PolyError> {
        let i = ctx.require(name)?;
        Ok(Self::term(ctx, Monomial::var(ctx.nvars(), i, 1), C::one()))
    }

    /// Build from possibly repeated terms; like terms are summed.
    pub fn from_terms<I>(ctx: &Ctx, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if m.0.len() != ctx.nvars() {
                return Err(PolyError::ImageCount {
                    expected: ctx.nvars(),
                    got: m.0.len(),
                });
            }
            if let Some(i) = (0..ctx.nvars()).find(|&i| m.0[i] < 0 && !ctx.is_invertible(i)) {
                return Err(PolyError::NegativeExponent(ctx.name(i).to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// The constant value, if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// True if every stored exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(mismatch(&self.ctx, &other.ctx));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.clone().neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(mismatch(&self.ctx, &other.ctx));
        }
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Multiply by a monomial (exponents may be negative if the context allows).
    pub fn shift(&self, m: &Monomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        let out = LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        };
        debug_assert!(out.terms.keys().all(|k| out.ctx.admits(k)));
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative powers are only defined for single terms
    /// whose coefficient is a nonzero rational and whose variables are units.
    pub fn pow_int(&self, k: i32) -> Result<Self, PolyError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (m, c) = self.single_term().ok_or_else(|| {
            PolyError::NonMonomialInverse(self.to_string())
        })?;
        let inv = c
            .as_rational()
            .filter(|r| !r.is_zero())
            .ok_or_else(|| PolyError::NonMonomialInverse(self.to_string()))?;
        let inv = C::from_rational(inv.recip());
        let mk = m.pow(k);
        if let Some(i) = (0..self.ctx.nvars()).find(|&i| mk.0[i] < 0 && !self.ctx.is_invertible(i)) {
            return Err(PolyError::NegativeExponent(self.ctx.name(i).to_string()));
        }
        Ok(Self::term(&self.ctx, Monomial::one(self.ctx.nvars()), inv)
            .pow((-k) as u32)
            .shift(&mk))
    }

    fn single_term(&self) -> Option<(&Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Image under the ring map sending variable `i` to `images[i]`, landing
    /// in `target`. A variable occurring with a negative exponent must map to
    /// a single term.
    pub fn compose(&self, images: &[LaurentPoly<C>], target: &Ctx) -> Result<Self, PolyError> {
        if images.len() != self.ctx.nvars() {
            return Err(PolyError::ImageCount {
                expected: self.ctx.nvars(),
                got: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|p| !same_ctx(p.ctx(), target)) {
            return Err(mismatch(bad.ctx(), target));
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly<C>> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let key = (i, e);
                if !cache.contains_key(&key) {
                    let p = images[i].pow_int(e).map_err(|err| match err {
                        PolyError::NonMonomialInverse(_) => {
                            PolyError::NonMonomialInverse(self.ctx.name(i).to_string())
                        }
                        other => other,
                    })?;
                    cache.insert(key, p);
                }
                acc = &acc * &cache[&key];
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Replace `var` by `value`, fixing every other variable.
    pub fn substitute(&self, var: &str, value: &LaurentPoly<C>) -> Result<Self, PolyError> {
        let i = self.ctx.require(var)?;
        if !same_ctx(&self.ctx, value.ctx()) {
            return Err(mismatch(&self.ctx, value.ctx()));
        }
        let images: Vec<_> = (0..self.ctx.nvars())
            .map(|j| {
                if j == i {
                    value.clone()
                } else {
                    Self::term(&self.ctx, Monomial::var(self.ctx.nvars(), j, 1), C::one())
                }
            })
            .collect();
        self.compose(&images, &self.ctx)
    }

    /// Re-express in another context, matching variables by name. Variables
    /// missing from `target` must not occur.
    pub fn change_context(&self, target: &Ctx) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &ei) in m.0.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.ctx.name(i).to_string()))?;
                if ei < 0 && !target.is_invertible(j) {
                    return Err(PolyError::NegativeExponent(target.name(j).to_string()));
                }
                e[j] = ei;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::<D>::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Max over terms of the weighted exponent sum; `-inf` for zero.
    pub fn weighted_degree(&self, w: &WeightVector) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.weight(w.as_slice())))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Sum of the terms of top weighted degree.
    pub fn leading_form(&self, w: &WeightVector) -> Result<Self, PolyError> {
        let top = self.weighted_degree(w).finite().ok_or(PolyError::ZeroInput)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weight(w.as_slice()) == top)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn is_homogeneous(&self, w: &WeightVector) -> bool {
        let mut it = self.terms.keys().map(|m| m.weight(w.as_slice()));
        match it.next() {
            None => true,
            Some(first) => it.all(|d| d == first),
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.total_degree()))
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Largest and smallest exponent of variable `i` among the terms.
    pub fn exponent_range(&self, i: usize) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|m| m.0[i]).min()?;
        let hi = self.terms.keys().map(|m| m.0[i]).max()?;
        Some((lo, hi))
    }

    /// Group terms by the exponent of variable `i`, as a map from that
    /// exponent to the coefficient polynomial (with variable `i` removed, i.e.
    /// exponent set to zero).
    pub fn collect_by(&self, i: usize) -> BTreeMap<i32, LaurentPoly<C>> {
        let mut out: BTreeMap<i32, LaurentPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[i];
            rest.0[i] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.ctx))
                .add_term(rest, c.clone());
        }
        out
    }
}

impl LaurentPoly<Rational> {
    /// Convenience: a rational constant from an integer.
    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        Self::constant(ctx, crate::coeff::rat(n))
    }
}

impl<C: Coefficient> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for LaurentPoly<C> {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, C: Coefficient> $tr<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            /// Panics on a ring-context mismatch; see the `try_` variant.
            fn $method(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
                self.$checked(rhs).expect("ring context mismatch")
            }
        }
        impl<C: Coefficient> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                self.$checked(&rhs).expect("ring context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> Self {
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

/// Render a monomial as `x^2*y^-1`; the empty string for 1.
pub(crate) fn format_monomial(ctx: &RingContext, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.name(i), e)),
        }
    }
    parts.join("*")
}

// Terms print in descending graded-lex order; output reparses to an equal value.
impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = format_monomial(&self.ctx, m);
            for (r, sym) in c.parts() {
                let label = match (sym.is_empty(), mono.is_empty()) {
                    (true, _) => mono.clone(),
                    (false, true) => sym,
                    (false, false) => format!("{sym}*{mono}"),
                };
                write_signed_term(f, &r, &label, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}
