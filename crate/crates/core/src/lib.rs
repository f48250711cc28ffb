//! Degree-like functions on polynomial rings, the graded rings they define,
//! and exact tools for probing finite generation of those rings.
//!
//! All arithmetic is exact. Polynomials are generic over their coefficient
//! ring ([`coeff::Coefficient`]); the aliases below fix the two rings used
//! throughout: the rationals and `Q[xi]`.

pub mod coeff;
pub mod contexts;
pub mod degree;
pub mod degrees;
pub mod error;
pub mod family;
pub mod graded;
pub mod hilbert;
pub mod lifting;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod sample;

pub use coeff::{Coefficient, Rational, XiPoly};
pub use degree::Degree;
pub use poly::LaurentPoly;
pub use ring::{Ctx, Monomial, RingContext, WeightVector};

/// Laurent polynomial with rational coefficients.
pub type Poly = LaurentPoly<Rational>;

/// Laurent polynomial whose coefficients involve the generic parameter `xi`.
pub type XiLaurent = LaurentPoly<XiPoly>;
