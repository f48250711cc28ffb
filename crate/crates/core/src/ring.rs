//! Ring contexts (ordered variable lists) and exponent vectors.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::PolyError;

/// Ordered variable names plus a flag per variable saying whether negative
/// exponents are allowed (the variable is a unit of the ring).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    invertible: Vec<bool>,
}

pub type Ctx = Arc<RingContext>;

impl RingContext {
    /// Build a context from `(name, invertible)` pairs.
    pub fn new<S: AsRef<str>>(vars: &[(S, bool)]) -> Ctx {
        let names = vars.iter().map(|(n, _)| n.as_ref().to_string()).collect();
        let invertible = vars.iter().map(|(_, inv)| *inv).collect();
        Arc::new(RingContext { names, invertible })
    }

    /// Polynomial ring, no invertible variables.
    pub fn polynomial<S: AsRef<str>>(names: &[S]) -> Ctx {
        let vars: Vec<(&str, bool)> = names.iter().map(|n| (n.as_ref(), false)).collect();
        RingContext::new(&vars)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Check the exponent-sign invariant for a monomial in this context.
    pub fn admits(&self, m: &Monomial) -> bool {
        m.0.len() == self.nvars()
            && m.0
                .iter()
                .zip(&self.invertible)
                .all(|(&e, &inv)| e >= 0 || inv)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
            if self.invertible[i] {
                write!(f, ",{n}^-1")?;
            }
        }
        write!(f, "]")
    }
}

/// Exponent vector, one entry per variable of the owning context.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the first variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Dot product with a weight vector.
    pub fn weight(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer weight per variable, used for weighted degrees and leading forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn new(w: Vec<i64>) -> Self {
        WeightVector(w)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}
