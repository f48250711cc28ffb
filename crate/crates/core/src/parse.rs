//! Expression parser for Laurent polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var ('^' int)? | '(' expr ')' ('^' int)?
//! coeff  := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant. Identifiers not declared in the ring context
//! may still name a coefficient symbol (`xi` for [`XiPoly`](crate::coeff::XiPoly)
//! coefficients).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{Coefficient, Rational};
use crate::error::PolyError;
use crate::poly::LaurentPoly;
use crate::ring::{Ctx, Monomial};

/// Parse `text` into a polynomial over `ctx`.
pub fn parse_poly<C: Coefficient>(text: &str, ctx: &Ctx) -> Result<LaurentPoly<C>, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Ctx,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<C: Coefficient>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let mut acc = LaurentPoly::zero(self.ctx);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<C: Coefficient>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<C: Coefficient>(&mut self) -> Result<LaurentPoly<C>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                if self.eat(b'^') {
                    let start = self.pos;
                    let k = self.small_int()?;
                    return inner.pow_int(k).map_err(|e| match e {
                        PolyError::NonMonomialInverse(_) => PolyError::Syntax {
                            pos: start,
                            msg: "negative power of a non-monomial group".into(),
                        },
                        other => other,
                    });
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(LaurentPoly::constant(self.ctx, C::from_rational(r)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                let exp = if self.eat(b'^') { self.small_int()? } else { 1 };
                if let Some(i) = self.ctx.index_of(&name) {
                    if exp < 0 && !self.ctx.is_invertible(i) {
                        return Err(PolyError::NegativeExponent(name));
                    }
                    let m = Monomial::var(self.ctx.nvars(), i, exp);
                    Ok(LaurentPoly::term(self.ctx, m, C::one()))
                } else if let Some(c) = C::from_symbol(&name) {
                    if exp < 0 {
                        return Err(PolyError::Syntax {
                            pos: start,
                            msg: format!("negative power of coefficient symbol `{name}`"),
                        });
                    }
                    Ok(LaurentPoly::constant(self.ctx, c).pow(exp as u32))
                } else {
                    Err(PolyError::UnknownVariable(name))
                }
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn signed(&mut self) -> Result<BigInt, PolyError> {
        let neg = self.eat(b'-');
        let n = self.digits()?;
        Ok(if neg { -n } else { n })
    }

    fn small_int(&mut self) -> Result<i32, PolyError> {
        let start = self.pos;
        let n = self.signed()?;
        i32::try_from(n).map_err(|_| PolyError::Syntax {
            pos: start,
            msg: "exponent out of range".into(),
        })
    }

    fn rational(&mut self) -> Result<Rational, PolyError> {
        let num = self.signed()?;
        if self.eat(b'/') {
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::XiPoly;
    use crate::ring::RingContext;

    fn xy() -> Ctx {
        RingContext::new(&[("x", true), ("y", false)])
    }

    #[test]
    fn parses_shifted_coordinate() {
        let p: LaurentPoly<Rational> = parse_poly("y - x^5 - x^-2", &xy()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "-x^5 + y - x^-2");
        // reorders but reparses equal
        let q: LaurentPoly<Rational> = parse_poly(&p.to_string(), &xy()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn zero_and_parentheses() {
        let z: LaurentPoly<Rational> = parse_poly("0", &xy()).unwrap();
        assert!(z.is_zero());
        let p: LaurentPoly<Rational> = parse_poly("x^2*(y - x^5) - 1", &xy()).unwrap();
        let q: LaurentPoly<Rational> = parse_poly("x^2*y - x^7 - 1", &xy()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn coefficients_and_fractions() {
        let p: LaurentPoly<Rational> = parse_poly("-3/6*x*y + 2 * y^2 + -1", &xy()).unwrap();
        assert_eq!(p.to_string(), "-1/2*x*y + 2*y^2 - 1");
    }

    #[test]
    fn errors() {
        let ctx = RingContext::polynomial(&["x", "y"]);
        let e = parse_poly::<Rational>("x^-1", &ctx).unwrap_err();
        assert_eq!(e, PolyError::NegativeExponent("x".into()));
        let e = parse_poly::<Rational>("x + z", &ctx).unwrap_err();
        assert_eq!(e, PolyError::UnknownVariable("z".into()));
        let e = parse_poly::<Rational>("x + * y", &ctx).unwrap_err();
        assert!(matches!(e, PolyError::Syntax { pos: 4, .. }), "{e:?}");
        assert!(parse_poly::<Rational>("(x + y", &ctx).is_err());
        assert!(parse_poly::<Rational>("x y", &ctx).is_err());
        // xi is not a symbol of the rational coefficient ring
        assert!(parse_poly::<Rational>("xi*x", &ctx).is_err());
    }

    #[test]
    fn xi_coefficients() {
        let w = RingContext::new(&[("w", true)]);
        let s: LaurentPoly<XiPoly> = parse_poly("w^5 + w^-2 + xi*w^-3", &w).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "w^5 + w^-2 + xi*w^-3");
        let t: LaurentPoly<XiPoly> = parse_poly("(xi + 1)^2*w", &w).unwrap();
        assert_eq!(t.to_string(), "xi^2*w + 2*xi*w + w");
        assert_eq!(parse_poly::<XiPoly>(&t.to_string(), &w).unwrap(), t);
    }
}
