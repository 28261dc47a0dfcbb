//! Resultants of bivariate polynomials by fraction-free Bareiss elimination
//! on the Sylvester matrix; entries live in the polynomial ring of the
//! remaining variable, which keeps every division exact.

use num_traits::One;

use crate::poly::bivariate::{BivariatePolynomial, Var};
use crate::poly::univariate::UnivariatePolynomial;
use crate::poly::PolyError;
use crate::rat::Rat;

/// Eliminates `var` from `p` and `q`. The zero output signals a common
/// factor (a continuum of common roots). Requires both inputs nonzero with
/// positive degree in the eliminated variable.
pub fn resultant(
    p: &BivariatePolynomial,
    q: &BivariatePolynomial,
    var: Var,
) -> Result<UnivariatePolynomial, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::DegenerateInput);
    }
    let m = p.degree_in(var).unwrap() as usize;
    let n = q.degree_in(var).unwrap() as usize;
    if m == 0 || n == 0 {
        return Err(PolyError::DegenerateInput);
    }
    let pc = p.as_univariate_in(var);
    let qc = q.as_univariate_in(var);
    let size = m + n;
    let mut mat = vec![vec![UnivariatePolynomial::zero(); size]; size];
    for row in 0..n {
        for (k, c) in pc.iter().enumerate() {
            // Highest power first along the row.
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

fn bareiss_determinant(mut m: Vec<Vec<UnivariatePolynomial>>) -> UnivariatePolynomial {
    let n = m.len();
    if n == 0 {
        return UnivariatePolynomial::constant(Rat::one());
    }
    let mut prev = UnivariatePolynomial::constant(Rat::one());
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UnivariatePolynomial::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if num.is_zero() {
                    num
                } else {
                    num.exact_div(&prev)
                };
            }
            m[i][k] = UnivariatePolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.scale(&-Rat::one())
    } else {
        det
    }
}
