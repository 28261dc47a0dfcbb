//! Sparse bivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::univariate::UnivariatePolynomial;
use crate::poly::PolyError;
use crate::rat::{rat_to_f64, rat_to_string, Rat};

/// Which of the two variables an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Coefficients of the affine substitution `x = a X + b Y + c`,
/// `y = alpha X + beta Y + gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineCoeffs {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl AffineCoeffs {
    pub fn determinant(&self) -> Rat {
        &self.a * &self.beta - &self.b * &self.alpha
    }
}

/// Polynomial in two variables. Keys are exponent pairs `(i, j)` for
/// `x^i y^j`; no stored coefficient is zero. Variable labels are purely
/// informational and ignored by equality.
#[derive(Clone)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rat>,
    vars: (&'static str, &'static str),
}

impl PartialEq for BivariatePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for BivariatePolynomial {}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            vars: ("x", "y"),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.insert_term(0, 0, c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        match v {
            Var::X => p.insert_term(1, 0, Rat::one()),
            Var::Y => p.insert_term(0, 1, Rat::one()),
        }
        p
    }

    pub fn with_vars(mut self, x: &'static str, y: &'static str) -> Self {
        self.vars = (x, y);
        self
    }

    pub fn var_labels(&self) -> (&'static str, &'static str) {
        self.vars
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    /// Inserts a term, dropping exact zeros.
    pub fn insert_term(&mut self, i: u32, j: u32, c: Rat) {
        if !c.is_zero() {
            self.terms.insert((i, j), c);
        }
    }

    /// Adds `c * x^i y^j` to the polynomial.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i,
                Var::Y => j,
            })
            .max()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero().with_vars(self.vars.0, self.vars.1);
        }
        let mut out = self.clone();
        for coeff in out.terms.values_mut() {
            *coeff *= c;
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(Rat::one());
        for _ in 0..n {
            out = &out * self;
        }
        out.vars = self.vars;
        out
    }

    pub fn eval_rat(&self, x: &Rat, y: &Rat) -> Rat {
        // Horner in x over coefficient polynomials in y.
        let by_x = self.as_univariate_in(Var::X);
        let mut acc = Rat::zero();
        for c in by_x.iter().rev() {
            acc = acc * x + c.eval_rat(y);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let by_x = self.as_univariate_in(Var::X);
        let mut acc = 0.0;
        for c in by_x.iter().rev() {
            acc = acc * x + c.eval_f64(y);
        }
        acc
    }

    /// Sum of `|c_ij| |x|^i |y|^j`, used as a residual scale.
    pub fn eval_abs_f64(&self, x: f64, y: f64) -> f64 {
        let (ax, ay) = (x.abs(), y.abs());
        self.terms
            .iter()
            .map(|(&(i, j), c)| rat_to_f64(c).abs() * ax.powi(i as i32) * ay.powi(j as i32))
            .sum()
    }

    /// Interval extension over a rational box: the result encloses the true
    /// range of the polynomial on `x_iv` x `y_iv`.
    pub fn eval_interval_box(
        &self,
        x_iv: &crate::poly::interval::Interval,
        y_iv: &crate::poly::interval::Interval,
    ) -> crate::poly::interval::Interval {
        use crate::poly::interval as iv;
        let coef_ivs: Vec<iv::Interval> = self
            .as_univariate_in(Var::X)
            .iter()
            .map(|c| c.eval_interval(&y_iv.0, &y_iv.1))
            .collect();
        let mut acc: iv::Interval = (Rat::zero(), Rat::zero());
        for civ in coef_ivs.iter().rev() {
            let prod = iv::mul(&acc, x_iv);
            acc = (prod.0 + &civ.0, prod.1 + &civ.1);
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> Self {
        let mut out = Self::zero().with_vars(self.vars.0, self.vars.1);
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term(i - 1, j, c * Rat::from_integer(BigInt::from(i))),
                Var::Y if j > 0 => out.add_term(i, j - 1, c * Rat::from_integer(BigInt::from(j))),
                _ => {}
            }
        }
        out
    }

    /// Coefficient list indexed by the power of `v`; entries are univariate
    /// polynomials in the other variable.
    pub fn as_univariate_in(&self, v: Var) -> Vec<UnivariatePolynomial> {
        let deg = self.degree_in(v).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![UnivariatePolynomial::zero(); deg.max(1)];
        for (&(i, j), c) in &self.terms {
            let (main, other) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            out[main as usize].add_term(other as usize, c.clone());
        }
        out
    }

    /// Lifts a univariate polynomial into the bivariate ring with its
    /// variable placed at `v`.
    pub fn from_univariate(u: &UnivariatePolynomial, v: Var) -> Self {
        let mut out = Self::zero();
        for (k, c) in u.coeffs().iter().enumerate() {
            match v {
                Var::X => out.insert_term(k as u32, 0, c.clone()),
                Var::Y => out.insert_term(0, k as u32, c.clone()),
            }
        }
        out
    }

    /// Substitutes the second variable by the first, giving a univariate
    /// polynomial (the restriction to the diagonal).
    pub fn substitute_diagonal(&self) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term((i + j) as usize, c.clone());
        }
        out
    }

    /// Restriction to `v = 0`, as a univariate polynomial in the other
    /// variable.
    pub fn restrict_zero(&self, v: Var) -> UnivariatePolynomial {
        let mut out = UnivariatePolynomial::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i == 0 => out.add_term(j as usize, c.clone()),
                Var::Y if j == 0 => out.add_term(i as usize, c.clone()),
                _ => {}
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero().with_vars(self.vars.1, self.vars.0);
        for (&(i, j), c) in &self.terms {
            out.insert_term(j, i, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_vars()
    }

    /// Fully expanded substitution `p(aX + bY + c, alpha X + beta Y + gamma)`.
    pub fn compose_affine(&self, m: &AffineCoeffs) -> Self {
        let lx = Self::from_terms([
            ((1, 0), m.a.clone()),
            ((0, 1), m.b.clone()),
            ((0, 0), m.c.clone()),
        ]);
        let ly = Self::from_terms([
            ((1, 0), m.alpha.clone()),
            ((0, 1), m.beta.clone()),
            ((0, 0), m.gamma.clone()),
        ]);
        let max_i = self.degree_in(Var::X).unwrap_or(0) as usize;
        let max_j = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let mut pow_x = Vec::with_capacity(max_i + 1);
        let mut pow_y = Vec::with_capacity(max_j + 1);
        pow_x.push(Self::constant(Rat::one()));
        for _ in 0..max_i {
            let next = pow_x.last().unwrap() * &lx;
            pow_x.push(next);
        }
        pow_y.push(Self::constant(Rat::one()));
        for _ in 0..max_j {
            let next = pow_y.last().unwrap() * &ly;
            pow_y.push(next);
        }
        let mut out = Self::zero().with_vars(self.vars.0, self.vars.1);
        for (&(i, j), c) in &self.terms {
            let prod = &pow_x[i as usize] * &pow_y[j as usize];
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Positive rational `c` such that `self / c` is an integer polynomial
    /// with coprime coefficients. Panics on the zero polynomial.
    pub fn content(&self) -> Rat {
        assert!(!self.is_zero(), "content of the zero polynomial");
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Graded-lex leading key and coefficient (total degree first, then the
    /// first variable's exponent).
    pub fn grlex_leading(&self) -> Option<((u32, u32), Rat)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (i + j, i))
            .map(|(&k, c)| (k, c.clone()))
    }

    /// Canonical scaling: divide by the content and flip signs so the
    /// graded-lex leading coefficient is positive.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.scale(&self.content().recip());
        let (_, lead) = out.grlex_leading().unwrap();
        if lead.is_negative() {
            out = -&out;
        }
        out
    }

    /// Exact quotient of a polynomial in `(y1, y2)` that vanishes on the
    /// diagonal by the factor `(y1 - y2)`.
    pub fn factor_out_difference(&self) -> Result<Self, PolyError> {
        if !self.substitute_diagonal().is_zero() {
            return Err(PolyError::NotDivisible);
        }
        // Synthetic division by (x - y) in (Q[y])[x]: the divisor is monic
        // linear in x with root y.
        let coeffs = self.as_univariate_in(Var::X);
        let d = coeffs.len() - 1;
        if d == 0 {
            // Zero polynomial (diagonal check passed and no x dependence
            // means the y-part must be zero too).
            debug_assert!(self.is_zero());
            return Ok(Self::zero().with_vars(self.vars.0, self.vars.1));
        }
        let y = UnivariatePolynomial::identity();
        let mut quotient = vec![UnivariatePolynomial::zero(); d];
        quotient[d - 1] = coeffs[d].clone();
        for k in (1..d).rev() {
            quotient[k - 1] = &coeffs[k] + &(&y * &quotient[k]);
        }
        let mut out = Self::zero().with_vars(self.vars.0, self.vars.1);
        for (k, q) in quotient.iter().enumerate() {
            for (m, c) in q.coeffs().iter().enumerate() {
                out.add_term(k as u32, m as u32, c.clone());
            }
        }
        debug_assert_eq!(
            &(&(Self::var(Var::X) - Self::var(Var::Y)) * &out),
            self,
            "difference factor round trip"
        );
        Ok(out)
    }

    /// Rewrites a symmetric polynomial in the elementary symmetric variables
    /// `z = y1 + y2`, `w = y1 y2`.
    pub fn symmetric_reduce(&self) -> Result<Self, PolyError> {
        if !self.is_symmetric() {
            return Err(PolyError::NotSymmetric);
        }
        let e1 = Self::var(Var::X) + Self::var(Var::Y);
        let e2 = &Self::var(Var::X) * &Self::var(Var::Y);
        let mut rem = self.clone();
        let mut out = Self::zero().with_vars("z", "w");
        while !rem.is_zero() {
            // Lex-leading term of a symmetric polynomial has i >= j.
            let (&(i, j), c) = rem.terms.iter().next_back().unwrap();
            debug_assert!(i >= j);
            let (c, i, j) = (c.clone(), i, j);
            out.add_term(i - j, j, c.clone());
            let basis = &e1.pow(i - j) * &e2.pow(j);
            rem = &rem - &basis.scale(&c);
        }
        debug_assert_eq!(&out.eval_symmetric_back(), self, "symmetric round trip");
        Ok(out)
    }

    /// Substitutes `z -> y1 + y2`, `w -> y1 y2` (inverse of
    /// `symmetric_reduce`).
    pub fn eval_symmetric_back(&self) -> Self {
        let e1 = Self::var(Var::X) + Self::var(Var::Y);
        let e2 = &Self::var(Var::X) * &Self::var(Var::Y);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let prod = &e1.pow(i) * &e2.pow(j);
            out = &out + &prod.scale(c);
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: Self) -> Self::Output {
        &self + &rhs
    }
}

impl<'a> Add<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &'a BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &'a BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: Self) -> Self::Output {
        &self - &rhs
    }
}

impl<'a> Mul<&'a BivariatePolynomial> for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &'a BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero().with_vars(self.vars.0, self.vars.1);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl<'a> Neg for &'a BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Graded-lex descending.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(rat_to_string(&mag));
            }
            if i > 0 {
                parts.push(if i == 1 {
                    self.vars.0.to_string()
                } else {
                    format!("{}^{}", self.vars.0, i)
                });
            }
            if j > 0 {
                parts.push(if j == 1 {
                    self.vars.1.to_string()
                } else {
                    format!("{}^{}", self.vars.1, j)
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
