use num_traits::Zero;

use crate::coeff::XiPoly;
use crate::contexts;
use crate::degree::Degree;
use crate::error::DegreeError;
use crate::ring::Ctx;
use crate::{Poly, XiLaurent};

use super::DegreeLike;

/// Degree through a finite degree-wise Puiseux series.
///
/// For `h(u, v)` the value is `scale / e` times the top `w`-exponent of
/// `h(w^e, series(w))`, where `w = u^(1/e)` and `series` may carry the
/// generic coefficient `xi`. A term counts iff its `xi`-polynomial
/// coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxDegree {
    ramification: u32,
    series: XiLaurent,
    scale: u32,
}

impl PuiseuxDegree {
    pub fn new(ramification: u32, series: XiLaurent, scale: u32) -> Result<Self, DegreeError> {
        if ramification == 0 || scale == 0 {
            return Err(DegreeError::InvalidSpec(
                "ramification and scale must be positive".into(),
            ));
        }
        let series = series.change_context(&contexts::w())?;
        if series.is_zero() {
            return Err(DegreeError::InvalidSpec("empty Puiseux series".into()));
        }
        Ok(PuiseuxDegree {
            ramification,
            series,
            scale,
        })
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn series(&self) -> &XiLaurent {
        &self.series
    }

    /// `h(w^e, series)` in `Q[xi][w, w^-1]`.
    pub fn substitute(&self, h: &Poly) -> Result<XiLaurent, DegreeError> {
        let h = h.change_context(&contexts::uv())?;
        let hx: XiLaurent = h.map_coeffs(|c| XiPoly::constant(c.clone()));
        let w = contexts::w();
        let u_image = XiLaurent::var(&w, "w")?.pow(self.ramification);
        Ok(hx.compose(&[u_image, self.series.clone()], &w)?)
    }

    /// Largest `w`-exponent of the substitution, `-inf` if it vanishes.
    pub fn top_w_exponent(&self, h: &Poly) -> Result<Degree, DegreeError> {
        let s = self.substitute(h)?;
        let top = s.terms().next_back().map(|(m, _)| m.0[0] as i64);
        Ok(top.map_or(Degree::NegInf, Degree::Finite))
    }
}

impl DegreeLike for PuiseuxDegree {
    fn degree(&self, h: &Poly) -> Result<Degree, DegreeError> {
        match self.top_w_exponent(h)? {
            Degree::NegInf => Ok(Degree::NegInf),
            Degree::Finite(t) => {
                let num = t * self.scale as i64;
                let e = self.ramification as i64;
                if !(num % e).is_zero() {
                    return Err(DegreeError::InvalidSpec(format!(
                        "value {num}/{e} is not an integer"
                    )));
                }
                Ok(Degree::Finite(num / e))
            }
        }
    }
    fn domain(&self) -> Ctx {
        contexts::uv()
    }
    fn is_semidegree(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::super::main_example::{eta, eta_key_forms};
    use super::*;
    use crate::parse::parse_poly;

    fn h(s: &str) -> Poly {
        parse_poly(s, &contexts::uv()).unwrap()
    }

    #[test]
    fn eta_on_generators() {
        let e = eta();
        assert_eq!(e.degree(&h("u")).unwrap(), Degree::Finite(2));
        assert_eq!(e.degree(&h("v")).unwrap(), Degree::Finite(5));
        assert_eq!(e.degree(&h("0")).unwrap(), Degree::NegInf);
        assert_eq!(e.degree(&h("1")).unwrap(), Degree::Finite(0));
    }

    #[test]
    fn substitution_of_key_forms() {
        let e = eta();
        let w = contexts::w();
        let s3 = e.substitute(&h("v^2 - u^5")).unwrap();
        let want3: XiLaurent =
            parse_poly("2*w^3 + 2*xi*w^2 + w^-4 + 2*xi*w^-5 + xi^2*w^-6", &w).unwrap();
        assert_eq!(s3, want3);
        let s4 = e.substitute(&h("v^2 - u^5 - 2*u^-1*v")).unwrap();
        let want4: XiLaurent = parse_poly("2*xi*w^2 - w^-4 + xi^2*w^-6", &w).unwrap();
        assert_eq!(s4, want4);
        let values: Vec<_> = eta_key_forms()
            .iter()
            .map(|k| e.degree(k).unwrap())
            .collect();
        assert_eq!(values, [2, 5, 3, 2].map(Degree::Finite));
    }

    #[test]
    fn series_substitution_of_v_is_the_series() {
        let e = eta();
        assert_eq!(e.substitute(&h("v")).unwrap(), *e.series());
    }

    #[test]
    fn non_integral_values_are_reported() {
        let series = parse_poly("w^5", &contexts::w()).unwrap();
        let odd = PuiseuxDegree::new(2, series, 1).unwrap();
        assert!(odd.degree(&h("v")).is_err());
        assert_eq!(odd.degree(&h("u")).unwrap(), Degree::Finite(1));
    }
}
