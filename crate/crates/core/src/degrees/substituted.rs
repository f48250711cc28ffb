use crate::contexts;
use crate::degree::Degree;
use crate::error::DegreeError;
use crate::ring::{Ctx, WeightVector};
use crate::Poly;

use super::DegreeLike;

/// Weighted degree in the coordinates `(x, Y)` with `y = Y + shift(x)`:
/// weight `x_weight` on `x` and `-y_weight_neg` on `Y`, restricted to
/// `Q[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutedWeightedDegree {
    x_weight: i64,
    y_weight_neg: i64,
    shift: Poly,
    /// `Y + shift(x)` in `Q[x, x^-1, Y]`.
    y_image: Poly,
    weights: WeightVector,
}

impl SubstitutedWeightedDegree {
    pub fn new(x_weight: i64, y_weight_neg: i64, shift: Poly) -> Result<Self, DegreeError> {
        if x_weight <= 0 || y_weight_neg <= 0 {
            return Err(DegreeError::InvalidSpec(format!(
                "weights must be positive, got x: {x_weight}, -y: {y_weight_neg}"
            )));
        }
        let shift = shift.change_context(&contexts::xy())?;
        if shift.terms().any(|(m, _)| m.0[1] != 0) {
            return Err(DegreeError::InvalidSpec(format!(
                "shift {shift} must involve x only"
            )));
        }
        let target = contexts::x_cap_y();
        let y_image = &Poly::var(&target, "Y")? + &shift.change_context(&target)?;
        Ok(SubstitutedWeightedDegree {
            x_weight,
            y_weight_neg,
            shift,
            y_image,
            weights: WeightVector(vec![x_weight, -y_weight_neg]),
        })
    }

    pub fn x_weight(&self) -> i64 {
        self.x_weight
    }

    pub fn y_weight_neg(&self) -> i64 {
        self.y_weight_neg
    }

    pub fn shift(&self) -> &Poly {
        &self.shift
    }

    /// Weights on `(x, Y)`.
    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// `f(x, Y + shift(x))` in `Q[x, x^-1, Y]`.
    pub fn rewrite(&self, f: &Poly) -> Result<Poly, DegreeError> {
        let f = f.change_context(&contexts::xy())?;
        let target = contexts::x_cap_y();
        let images = [Poly::var(&target, "x")?, self.y_image.clone()];
        Ok(f.compose(&images, &target)?)
    }

    /// Same weights, shift mirrored under `x -> -x`.
    pub fn conjugate(&self) -> Self {
        let xy = contexts::xy();
        let neg_x = -Poly::var(&xy, "x").expect("x");
        let y = Poly::var(&xy, "y").expect("y");
        let mirrored = self
            .shift
            .compose(&[neg_x, y], &xy)
            .expect("monomial image of a unit");
        Self::new(self.x_weight, self.y_weight_neg, mirrored).expect("same weights")
    }
}

impl DegreeLike for SubstitutedWeightedDegree {
    fn degree(&self, f: &Poly) -> Result<Degree, DegreeError> {
        Ok(self.rewrite(f)?.weighted_degree(&self.weights))
    }
    fn domain(&self) -> Ctx {
        contexts::xy()
    }
    fn is_semidegree(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::super::main_example::{delta1, delta2};
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &contexts::xy()).unwrap()
    }

    fn d(n: i64) -> Degree {
        Degree::Finite(n)
    }

    #[test]
    fn delta1_examples() {
        let d1 = delta1();
        assert_eq!(d1.degree(&p("x")).unwrap(), d(1));
        assert_eq!(d1.degree(&p("y")).unwrap(), d(5));
        assert_eq!(d1.degree(&p("x^2*(y - x^5) - 1")).unwrap(), d(-1));
        assert_eq!(d1.degree(&p("y - x^5")).unwrap(), d(-2));
        assert_eq!(d1.degree(&p("0")).unwrap(), Degree::NegInf);
    }

    #[test]
    fn delta2_examples() {
        assert_eq!(delta2().degree(&p("y - x^5")).unwrap(), d(5));
        assert_eq!(delta2().degree(&p("y + x^5")).unwrap(), d(-2));
    }

    #[test]
    fn rewrite_of_z2_is_x2_y() {
        let r = delta1().rewrite(&p("x^2*(y - x^5) - 1")).unwrap();
        assert_eq!(r, parse_poly("x^2*Y", &contexts::x_cap_y()).unwrap());
    }

    #[test]
    fn conjugate_of_delta1_is_delta2() {
        assert_eq!(delta1().conjugate(), delta2());
    }

    #[test]
    fn strict_subadditivity_witness_for_max() {
        use super::super::main_example::delta;
        let f = p("y - x^5 - x^-2");
        let g = p("y + x^5 - x^-2");
        let dm = delta();
        assert_eq!(dm.degree(&(&f * &g)).unwrap(), d(2));
        assert_eq!(dm.degree(&f).unwrap() + dm.degree(&g).unwrap(), d(10));
    }
}
