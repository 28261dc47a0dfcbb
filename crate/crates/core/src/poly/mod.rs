//! Exact polynomial arithmetic: bivariate/univariate polynomials over
//! arbitrary-precision rationals, resultants, real-root isolation, and the
//! two structural factorings used by the closing equations.

pub mod bivariate;
pub mod interval;
pub mod rational_fn;
pub mod resultant;
pub mod univariate;

pub use bivariate::{AffineCoeffs, BivariatePolynomial, Var};
pub use rational_fn::RationalFunction;
pub use resultant::resultant;
pub use univariate::{IsolatedRoot, RootInterval, UnivariatePolynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The diagonal substitution is nonzero, so `(y1 - y2)` is not a factor.
    #[error("polynomial does not vanish on the diagonal y1 = y2")]
    NotDivisible,
    /// Symmetric reduction requires `p(y1, y2) = p(y2, y1)`.
    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,
    /// Resultant inputs must be nonzero with positive degree in the
    /// eliminated variable.
    #[error("degenerate input to resultant")]
    DegenerateInput,
}
