//! Coefficient rings for [`LaurentPoly`](crate::poly::LaurentPoly).
//!
//! Everything is exact. The base field is the rationals; the only other
//! coefficient ring is `Q[xi]`, used to carry the generic parameter of a
//! degree-wise Puiseux series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Build a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational the way the expression grammar reads it back: `3`, `-3/4`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scalar type a polynomial can carry.
///
/// Besides the ring operations a coefficient knows how to split itself into
/// rational multiples of "symbol monomials" (for printing) and may claim
/// named symbols while parsing (for example `xi`).
pub trait Coefficient:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: Rational) -> Self;

    /// Coefficient denoted by a bare identifier, if this ring has one.
    fn from_symbol(_name: &str) -> Option<Self> {
        None
    }

    /// Split into `(rational, symbol-monomial)` parts; the symbol part is the
    /// empty string for the constant part. Zero has no parts.
    fn parts(&self) -> Vec<(Rational, String)>;

    /// The coefficient as a plain rational, if it is one.
    fn as_rational(&self) -> Option<Rational>;
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn parts(&self) -> Vec<(Rational, String)> {
        if self.is_zero() {
            Vec::new()
        } else {
            vec![(self.clone(), String::new())]
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Polynomial in the generic parameter `xi` with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `xi^k`; trailing zeros are never stored,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XiPoly {
    coeffs: Vec<Rational>,
}

/// Name of the generic parameter in the expression grammar.
pub const XI_SYMBOL: &str = "xi";

impl XiPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        XiPoly { coeffs }
    }

    /// The generator `xi`.
    pub fn xi() -> Self {
        XiPoly::new(vec![rat(0), rat(1)])
    }

    pub fn constant(c: Rational) -> Self {
        XiPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree in `xi`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = rat(0);
        let coeffs = (0..n)
            .map(|k| {
                f(
                    self.coeffs.get(k).unwrap_or(&zero),
                    other.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect();
        XiPoly::new(coeffs)
    }
}

impl fmt::Debug for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XiPoly({self})")
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sym = match k {
                0 => String::new(),
                1 => XI_SYMBOL.to_string(),
                _ => format!("{XI_SYMBOL}^{k}"),
            };
            write_signed_term(f, c, &sym, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Shared term writer: `c*sym` with sign handling and unit suppression.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    sym: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if sym.is_empty() {
        write!(f, "{}", format_rational(&abs))
    } else if abs.is_one() {
        write!(f, "{sym}")
    } else {
        write!(f, "{}*{sym}", format_rational(&abs))
    }
}

impl Zero for XiPoly {
    fn zero() -> Self {
        XiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for XiPoly {
    fn one() -> Self {
        XiPoly::constant(rat(1))
    }
}

impl Add for XiPoly {
    type Output = XiPoly;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Sub for XiPoly {
    type Output = XiPoly;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl Neg for XiPoly {
    type Output = XiPoly;
    fn neg(self) -> Self {
        XiPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for XiPoly {
    type Output = XiPoly;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XiPoly::new(out)
    }
}

impl Coefficient for XiPoly {
    fn from_rational(r: Rational) -> Self {
        XiPoly::constant(r)
    }

    fn from_symbol(name: &str) -> Option<Self> {
        (name == XI_SYMBOL).then(XiPoly::xi)
    }

    fn parts(&self) -> Vec<(Rational, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let sym = match k {
                    0 => String::new(),
                    1 => XI_SYMBOL.to_string(),
                    _ => format!("{XI_SYMBOL}^{k}"),
                };
                (c.clone(), sym)
            })
            .collect()
    }

    fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(rat(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}
