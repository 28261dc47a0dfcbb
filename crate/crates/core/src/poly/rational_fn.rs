//! Rational functions (quotients of bivariate polynomials).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::bivariate::{AffineCoeffs, BivariatePolynomial, Var};
use crate::poly::univariate::UnivariatePolynomial;
use crate::rat::Rat;

/// A quotient of bivariate polynomials. Normalized so numerator and
/// denominator carry no common rational content and the denominator's
/// graded-lex leading coefficient is positive.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    numerator: BivariatePolynomial,
    denominator: BivariatePolynomial,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

impl RationalFunction {
    pub fn new(numerator: BivariatePolynomial, denominator: BivariatePolynomial) -> Self {
        assert!(
            !denominator.is_zero(),
            "rational function with zero denominator"
        );
        let (mut num, mut den) = if numerator.is_zero() {
            let d = denominator.scale(&denominator.content().recip());
            (numerator, d)
        } else {
            // Split both into content times primitive integer part; the
            // fraction of contents reduces to p/q with p, q coprime.
            let cn = numerator.content();
            let cd = denominator.content();
            let g = cn / cd;
            let n_prim = numerator.scale(&numerator.content().recip());
            let d_prim = denominator.scale(&denominator.content().recip());
            (
                n_prim.scale(&Rat::from_integer(g.numer().clone())),
                d_prim.scale(&Rat::from_integer(g.denom().clone())),
            )
        };
        if den.grlex_leading().unwrap().1.is_negative() {
            num = num.scale(&-Rat::one());
            den = den.scale(&-Rat::one());
        }
        Self {
            numerator: num,
            denominator: den,
        }
    }

    pub fn from_polynomial(p: BivariatePolynomial) -> Self {
        Self::new(p, BivariatePolynomial::constant(Rat::one()))
    }

    pub fn numerator(&self) -> &BivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &BivariatePolynomial {
        &self.denominator
    }

    pub fn compose_affine(&self, m: &AffineCoeffs) -> Self {
        Self::new(
            self.numerator.compose_affine(m),
            self.denominator.compose_affine(m),
        )
    }

    /// Restriction to `x = 0` as a pair (numerator, denominator) of
    /// univariate polynomials in `y`.
    pub fn restrict_x_zero(&self) -> (UnivariatePolynomial, UnivariatePolynomial) {
        (
            self.numerator.restrict_zero(Var::X),
            self.denominator.restrict_zero(Var::X),
        )
    }

    /// `None` when the denominator vanishes at the point.
    pub fn eval_f64(&self, x: f64, y: f64) -> Option<f64> {
        let d = self.denominator.eval_f64(x, y);
        if d == 0.0 {
            return None;
        }
        Some(self.numerator.eval_f64(x, y) / d)
    }

    pub fn eval_rat(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        let d = self.denominator.eval_rat(x, y);
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.eval_rat(x, y) / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn normalization_removes_common_content() {
        // (2x^2 + 2) / (4y) -> (x^2 + 1) / (2y)
        let num = BivariatePolynomial::from_terms([((2, 0), rat(2)), ((0, 0), rat(2))]);
        let den = BivariatePolynomial::from_terms([((0, 1), rat(4))]);
        let r = RationalFunction::new(num, den);
        assert_eq!(r.numerator().coeff(2, 0), rat(1));
        assert_eq!(r.denominator().coeff(0, 1), rat(2));
    }

    #[test]
    fn negative_denominator_lead_flips() {
        let num = BivariatePolynomial::constant(rat(1));
        let den = BivariatePolynomial::from_terms([((0, 1), rat(-1)), ((0, 0), rat(3))]);
        let r = RationalFunction::new(num, den);
        assert_eq!(r.denominator().coeff(0, 1), rat(1));
        assert_eq!(r.numerator().coeff(0, 0), rat(-1));
        assert_eq!(r.eval_rat(&rat(0), &rat(1)), Some(ratio(1, 2)));
    }

    #[test]
    fn restriction_to_axis() {
        // (x^2 + y^2) / (1 + 2xy) at x = 0 -> y^2 / 1.
        let num = BivariatePolynomial::from_terms([((2, 0), rat(1)), ((0, 2), rat(1))]);
        let den = BivariatePolynomial::from_terms([((0, 0), rat(1)), ((1, 1), rat(2))]);
        let r = RationalFunction::new(num, den);
        let (n, d) = r.restrict_x_zero();
        assert_eq!(n, UnivariatePolynomial::from_i64(&[0, 0, 1]));
        assert_eq!(d, UnivariatePolynomial::from_i64(&[1]));
    }
}
