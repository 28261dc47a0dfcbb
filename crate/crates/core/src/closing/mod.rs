//! Builds the crossing closing equations on `x = 0` for a piecewise system,
//! reduces them exactly (denominators cleared, the `(y1 - y2)` factor
//! removed), reports degree bounds, and solves for candidate crossing pairs.

pub mod solve;
pub mod surd;

pub use solve::{
    solve_closing, CandidatePair, OrdinateRoot, PoleRejection, SolveOptions, SolveOutcome,
};
pub use surd::ExactValue;

use thiserror::Error;

use crate::centers::{CenterError, CenterSpec};
use crate::poly::{BivariatePolynomial, UnivariatePolynomial, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosingError {
    #[error(transparent)]
    Center(#[from] CenterError),
    /// Internal consistency failure: the cleared difference numerator did
    /// not vanish on the diagonal (impossible for genuine first integrals).
    #[error("closing numerator does not vanish on the diagonal")]
    DiagonalNotVanishing,
    /// The closing equations admit a continuum of solutions, so no isolated
    /// crossing pairs exist.
    #[error("closing system has a continuum of solutions")]
    ContinuumDetected,
}

/// The two half-systems; `right` governs `x >= 0`, `left` governs `x <= 0`,
/// and the discontinuity line is fixed at `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSystem {
    pub right: CenterSpec,
    pub left: CenterSpec,
}

/// Restriction of one half's first integral to the switching line, kept as
/// an exact numerator/denominator pair in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedIntegral {
    pub numerator: UnivariatePolynomial,
    pub denominator: UnivariatePolynomial,
}

impl RestrictedIntegral {
    pub fn eval_f64(&self, y: f64) -> f64 {
        self.numerator.eval_f64(y) / self.denominator.eval_f64(y)
    }

    pub fn constant_one() -> Self {
        Self {
            numerator: UnivariatePolynomial::zero(),
            denominator: UnivariatePolynomial::constant(crate::rat::rat(1)),
        }
    }
}

/// The reduced closing equations in `(y1, y2)` plus the excluded-pole data.
#[derive(Debug, Clone)]
pub struct ClosingSystem {
    /// Closing polynomial of the right half, canonical scaling.
    pub f1: BivariatePolynomial,
    /// Closing polynomial of the left half, canonical scaling.
    pub f2: BivariatePolynomial,
    /// Cleared denominator of the right half restricted to the line.
    pub d1: UnivariatePolynomial,
    /// Cleared denominator of the left half restricted to the line.
    pub d2: UnivariatePolynomial,
    /// Total degrees of `f1`, `f2`.
    pub degrees: (u32, u32),
    /// Both closing polynomials rewritten in `z = y1 + y2`, `w = y1 y2`.
    pub symmetric_form: Option<(BivariatePolynomial, BivariatePolynomial)>,
    /// Set when either cleared numerator is identically zero.
    pub continuum: bool,
    /// Set when the two restricted integrals coincide as rational functions.
    pub identical_integrals: bool,
    /// Restricted integrals, kept for level-value evaluation.
    pub h_right: RestrictedIntegral,
    pub h_left: RestrictedIntegral,
}

/// Degree product and the implied ceiling on crossing limit cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutRecord {
    pub raw_product: u64,
    pub cycle_bound: u64,
}

fn difference_poly(h: &RestrictedIntegral) -> Result<BivariatePolynomial, ClosingError> {
    let n1 = BivariatePolynomial::from_univariate(&h.numerator, Var::X);
    let n2 = BivariatePolynomial::from_univariate(&h.numerator, Var::Y);
    let d1 = BivariatePolynomial::from_univariate(&h.denominator, Var::X);
    let d2 = BivariatePolynomial::from_univariate(&h.denominator, Var::Y);
    let cross = &(&n1 * &d2) - &(&n2 * &d1);
    if cross.is_zero() {
        return Ok(BivariatePolynomial::zero());
    }
    let f = cross
        .factor_out_difference()
        .map_err(|_| ClosingError::DiagonalNotVanishing)?;
    Ok(f.canonical().with_vars("y1", "y2"))
}

/// Restricts both conjugated integrals to `x = 0`, forms the numerator of
/// `h(y1) - h(y2)` over the cleared denominators, divides out the
/// `(y1 - y2)` factor exactly, and records degrees and the symmetric form.
pub fn build_closing_system(pw: &PiecewiseSystem) -> Result<ClosingSystem, ClosingError> {
    let (nr, dr) = pw.right.conjugated_integral().restrict_x_zero();
    let (nl, dl) = pw.left.conjugated_integral().restrict_x_zero();
    assert!(
        !dr.is_zero() && !dl.is_zero(),
        "restricted denominator vanished identically"
    );
    let h_right = RestrictedIntegral {
        numerator: nr,
        denominator: dr,
    };
    let h_left = RestrictedIntegral {
        numerator: nl,
        denominator: dl,
    };
    let identical =
        (&h_right.numerator * &h_left.denominator) == (&h_left.numerator * &h_right.denominator);
    let f1 = difference_poly(&h_right)?;
    let f2 = difference_poly(&h_left)?;
    Ok(assemble(f1, f2, h_right, h_left, identical))
}

/// Assembles a closing system from already-reduced closing polynomials;
/// used by the builder and by tests that construct systems directly.
pub fn assemble(
    f1: BivariatePolynomial,
    f2: BivariatePolynomial,
    h_right: RestrictedIntegral,
    h_left: RestrictedIntegral,
    identical_integrals: bool,
) -> ClosingSystem {
    let f1 = f1.canonical().with_vars("y1", "y2");
    let f2 = f2.canonical().with_vars("y1", "y2");
    let continuum = f1.is_zero() || f2.is_zero();
    debug_assert!(continuum || f1.is_symmetric(), "f1 must be symmetric");
    debug_assert!(continuum || f2.is_symmetric(), "f2 must be symmetric");
    let symmetric_form = if continuum {
        None
    } else {
        match (f1.symmetric_reduce(), f2.symmetric_reduce()) {
            (Ok(p1), Ok(p2)) => Some((p1.with_vars("z", "w"), p2.with_vars("z", "w"))),
            _ => None,
        }
    };
    let degrees = (f1.degree().unwrap_or(0), f2.degree().unwrap_or(0));
    ClosingSystem {
        d1: h_right.denominator.canonical(),
        d2: h_left.denominator.canonical(),
        f1,
        f2,
        degrees,
        symmetric_form,
        continuum,
        identical_integrals,
        h_right,
        h_left,
    }
}

/// Builds a bare closing system from two symmetric polynomials with trivial
/// denominators (no pole exclusions). Intended for solver-level testing.
pub fn from_polynomials(f1: BivariatePolynomial, f2: BivariatePolynomial) -> ClosingSystem {
    let identical = f1.canonical() == f2.canonical();
    assemble(
        f1,
        f2,
        RestrictedIntegral::constant_one(),
        RestrictedIntegral::constant_one(),
        identical,
    )
}

impl ClosingSystem {
    /// True when both closing polynomials depend on `z = y1 + y2` only;
    /// such systems never have isolated solution pairs.
    pub fn is_w_free(&self) -> bool {
        match &self.symmetric_form {
            Some((p1, p2)) => {
                p1.degree_in(Var::Y).unwrap_or(0) == 0 && p2.degree_in(Var::Y).unwrap_or(0) == 0
            }
            None => false,
        }
    }
}

/// Degree bound: the plain Bezout product halved for unordered pairs, or
/// the symmetric-form product when that ceiling is strictly smaller.
pub fn bezout_bound(cs: &ClosingSystem) -> Result<BezoutRecord, ClosingError> {
    if cs.continuum {
        return Err(ClosingError::ContinuumDetected);
    }
    if cs.is_w_free() {
        let (p1, p2) = cs.symmetric_form.as_ref().unwrap();
        let raw = (p1.degree().unwrap_or(0) as u64) * (p2.degree().unwrap_or(0) as u64);
        return Ok(BezoutRecord {
            raw_product: raw,
            cycle_bound: 0,
        });
    }
    let y_raw = (cs.degrees.0 as u64) * (cs.degrees.1 as u64);
    let y_bound = y_raw / 2;
    if let Some((p1, p2)) = &cs.symmetric_form {
        let zw_raw = (p1.degree().unwrap_or(0) as u64) * (p2.degree().unwrap_or(0) as u64);
        if zw_raw < y_bound {
            // Each (z, w) solution is one unordered pair, so no halving.
            return Ok(BezoutRecord {
                raw_product: zw_raw,
                cycle_bound: zw_raw,
            });
        }
    }
    Ok(BezoutRecord {
        raw_product: y_raw,
        cycle_bound: y_bound,
    })
}
