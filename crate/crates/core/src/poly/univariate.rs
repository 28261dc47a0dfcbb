//! Dense univariate polynomials over exact rationals, with the real-root
//! machinery (Sturm chains, Cauchy bounds, bisection refinement).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_to_f64, rat_to_string, Rat};

/// Coefficients stored lowest degree first; the leading coefficient is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rat>,
}

/// A closed interval with rational endpoints isolating one real root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn point(x: Rat) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }
}

/// An isolated real root: the isolating interval plus its float refinement.
#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    pub interval: RootInterval,
    pub value: f64,
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            if k == 0 || !mag.is_one() {
                write!(f, "{}", rat_to_string(&mag))?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k == 1 {
                write!(f, "t")?;
            } else if k > 1 {
                write!(f, "t^{}", k)?;
            }
        }
        Ok(())
    }
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    /// The polynomial `t`.
    pub fn identity() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, k: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, Rat::zero());
        }
        self.coeffs[k] += c;
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Interval extension by Horner with outward rounding in exact
    /// arithmetic: returns bounds of `p([lo, hi])`.
    pub fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        debug_assert!(lo <= hi);
        let mut acc_lo = Rat::zero();
        let mut acc_hi = Rat::zero();
        for c in self.coeffs.iter().rev() {
            let candidates = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
            let mut new_lo = candidates[0].clone();
            let mut new_hi = candidates[0].clone();
            for v in &candidates[1..] {
                if *v < new_lo {
                    new_lo = v.clone();
                }
                if *v > new_hi {
                    new_hi = v.clone();
                }
            }
            acc_lo = new_lo + c;
            acc_hi = new_hi + c;
        }
        (acc_lo, acc_hi)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k + 1)))
                .collect(),
        )
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &lead;
            let shift = rd - dd;
            quo.add_term(shift, factor.clone());
            for (k, c) in divisor.coeffs.iter().enumerate() {
                rem.add_term(k + shift, -(c * &factor));
            }
        }
        (quo, rem)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Positive content (integer gcd of the primitive scaling).
    pub fn content(&self) -> Rat {
        assert!(!self.is_zero());
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = self.scale(&self.content().recip());
        if out.leading_coeff().unwrap().is_negative() {
            out = out.scale(&-Rat::one());
        }
        out
    }

    /// Primitive positive gcd via an integer pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.canonical();
        let mut b = other.canonical();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut ai = a.integer_coeffs();
        let mut bi = b.integer_coeffs();
        loop {
            let r = Self::signed_pseudo_rem(&ai, &bi);
            if r.is_empty() {
                break;
            }
            ai = bi;
            bi = r;
        }
        Self::from_coeffs(bi.into_iter().map(Rat::from_integer).collect()).canonical()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() || self.degree() == Some(0) {
            return self.canonical();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.canonical()
        } else {
            self.exact_div(&g).canonical()
        }
    }

    /// Cauchy root bound `1 + max |a_i / a_n|`; every real root lies strictly
    /// inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self
            .leading_coeff()
            .expect("cauchy bound of the zero polynomial")
            .abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        max + Rat::one()
    }

    pub fn is_even_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// For an even polynomial, the polynomial `q` with `q(t^2) = p(t)`.
    pub fn even_part_substituted(&self) -> Option<Self> {
        if !self.is_even_poly() {
            return None;
        }
        Some(Self::from_coeffs(
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }

    /// Divides by the (positive) content; signs are preserved, which is what
    /// Sturm chains require.
    fn positive_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Integer coefficients of the primitive part (denominators are one
    /// after `positive_primitive`).
    fn integer_coeffs(&self) -> Vec<BigInt> {
        debug_assert!(self.coeffs.iter().all(|c| c.denom().is_one()));
        self.coeffs.iter().map(|c| c.numer().clone()).collect()
    }

    /// Sign of the primitive integer polynomial at `p/q`, via the
    /// homogeneous evaluation `sum a_k p^k q^(d-k)` in pure integer
    /// arithmetic (no rational gcd reductions).
    fn sign_at(coeffs: &[BigInt], x: &Rat) -> i8 {
        let p = x.numer();
        let q = x.denom();
        let d = coeffs.len() - 1;
        let mut acc = coeffs[d].clone();
        let mut qpow = BigInt::one();
        for k in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &coeffs[k] * &qpow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Pseudo-remainder of primitive integer polynomials: a positive-scalar
    /// multiple of the rational remainder, computed entirely over the
    /// integers. Returns the primitive part with the remainder's true sign.
    fn signed_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut rem: Vec<BigInt> = a.to_vec();
        let mut scale_applications = 0usize;
        while rem.len() >= b.len() {
            let dr = rem.len() - 1;
            // rem = lead * rem - rem_lead * x^(dr-db) * b
            let rem_lead = rem[dr].clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            scale_applications += 1;
            let shift = dr - db;
            for (k, bc) in b.iter().enumerate() {
                rem[k + shift] -= &rem_lead * bc;
            }
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                return rem;
            }
        }
        // Each scaling multiplied the remainder by lead; odd total count by
        // a negative lead flips the sign.
        if lead.sign() == num_bigint::Sign::Minus && scale_applications % 2 == 1 {
            for c in rem.iter_mut() {
                *c = -c.clone();
            }
        }
        // Primitive part, sign preserved.
        let mut content = BigInt::zero();
        for c in &rem {
            content = content.gcd(c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in rem.iter_mut() {
                *c /= &content;
            }
        }
        rem
    }

    /// Sturm chain as primitive integer coefficient vectors.
    fn sturm_chain_int(&self) -> Vec<Vec<BigInt>> {
        let head = self.positive_primitive();
        let deriv = head.derivative().positive_primitive();
        let mut chain = vec![head.integer_coeffs()];
        if deriv.is_zero() {
            return chain;
        }
        chain.push(deriv.integer_coeffs());
        loop {
            let n = chain.len();
            let rem = Self::signed_pseudo_rem(&chain[n - 2], &chain[n - 1]);
            if rem.is_empty() {
                break;
            }
            chain.push(rem.iter().map(|c| -c.clone()).collect());
        }
        chain
    }

    fn sign_changes(chain: &[Vec<BigInt>], x: &Rat) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for coeffs in chain {
            let s = Self::sign_at(coeffs, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Isolating intervals for every distinct real root, sorted ascending.
    /// Interval endpoints are never roots except for exact point hits.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        let sf = self.square_free_part();
        match sf.degree() {
            None => panic!("root isolation on the zero polynomial"),
            Some(0) => return Vec::new(),
            _ => {}
        }
        let bound = sf.cauchy_bound();
        let chain = sf.sturm_chain_int();
        let lo = -bound.clone();
        let hi = bound;
        let mut out = Vec::new();
        let v_lo = Self::sign_changes(&chain, &lo);
        let v_hi = Self::sign_changes(&chain, &hi);
        Self::isolate_rec(&chain, lo, hi, v_lo, v_hi, &mut out);
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    fn isolate_rec(
        chain: &[Vec<BigInt>],
        lo: Rat,
        hi: Rat,
        v_lo: usize,
        v_hi: usize,
        out: &mut Vec<RootInterval>,
    ) {
        let count = v_lo.saturating_sub(v_hi);
        if count == 0 {
            return;
        }
        if count == 1 {
            out.push(RootInterval { lo, hi });
            return;
        }
        let two = Rat::from_integer(BigInt::from(2));
        let mid = (&lo + &hi) / &two;
        if Self::sign_at(&chain[0], &mid) == 0 {
            out.push(RootInterval::point(mid.clone()));
            // Separate the exact root from the others before recursing.
            let mut delta = (&hi - &lo) / Rat::from_integer(BigInt::from(4));
            loop {
                let a = &mid - &delta;
                let b = &mid + &delta;
                if Self::sign_at(&chain[0], &a) != 0
                    && Self::sign_at(&chain[0], &b) != 0
                    && Self::sign_changes(chain, &a) - Self::sign_changes(chain, &b) == 1
                {
                    let v_a = Self::sign_changes(chain, &a);
                    let v_b = Self::sign_changes(chain, &b);
                    Self::isolate_rec(chain, lo, a, v_lo, v_a, out);
                    Self::isolate_rec(chain, b, hi, v_b, v_hi, out);
                    return;
                }
                delta /= &two;
            }
        }
        let v_mid = Self::sign_changes(chain, &mid);
        Self::isolate_rec(chain, lo, mid.clone(), v_lo, v_mid, out);
        Self::isolate_rec(chain, mid, hi, v_mid, v_hi, out);
    }

    /// Shrinks an isolating interval of the square-free part by sign
    /// bisection until its width is at most `tol`.
    pub fn refine_interval(sf: &Self, interval: &RootInterval, tol: &Rat) -> RootInterval {
        let mut lo = interval.lo.clone();
        let mut hi = interval.hi.clone();
        if lo == hi {
            return interval.clone();
        }
        let ic = sf.positive_primitive().integer_coeffs();
        let two = Rat::from_integer(BigInt::from(2));
        let mut s_lo = Self::sign_at(&ic, &lo);
        if s_lo == 0 {
            // Isolating invariant: endpoints are not roots unless the
            // interval is a point, so the root must be interior.
            // Nudge inward by a quarter width.
            let nudge = (&hi - &lo) / Rat::from_integer(BigInt::from(4));
            lo += nudge;
            s_lo = Self::sign_at(&ic, &lo);
        }
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / &two;
            let s_mid = Self::sign_at(&ic, &mid);
            if s_mid == 0 {
                return RootInterval::point(mid);
            }
            if s_mid == s_lo {
                lo = mid;
                s_lo = s_mid;
            } else {
                hi = mid;
            }
        }
        RootInterval { lo, hi }
    }

    /// All distinct real roots, isolated and refined to half-width <= `tol`,
    /// sorted ascending. A nonzero constant has no roots.
    pub fn real_roots(&self, tol: f64) -> Vec<IsolatedRoot> {
        assert!(tol > 0.0, "tolerance must be positive");
        let sf = self.square_free_part();
        if sf.degree() == Some(0) {
            return Vec::new();
        }
        let tol_rat = crate::rat::rat_from_f64(tol).unwrap() * Rat::from_integer(BigInt::from(2));
        self.isolate_real_roots()
            .into_iter()
            .map(|iv| {
                let refined = Self::refine_interval(&sf, &iv, &tol_rat);
                let value = refined.to_f64();
                IsolatedRoot {
                    interval: refined,
                    value,
                }
            })
            .collect()
    }
}

impl<'a> Add<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Add for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: Self) -> Self::Output {
        &self + &rhs
    }
}

impl<'a> Sub<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Sub for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: Self) -> Self::Output {
        &self - &rhs
    }
}

impl<'a> Mul<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UnivariatePolynomial::from_coeffs(coeffs)
    }
}

impl Mul for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: Self) -> Self::Output {
        &self * &rhs
    }
}

impl<'a> Neg for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn quadratic_roots_match_closed_form() {
        // t^2 - 26t + 38 has roots 13 +- sqrt(131).
        let p = UnivariatePolynomial::from_i64(&[38, -26, 1]);
        let roots = p.real_roots(1e-12);
        assert_eq!(roots.len(), 2);
        let lo = 13.0 - 131f64.sqrt();
        let hi = 13.0 + 131f64.sqrt();
        assert!((roots[0].value - lo).abs() < 1e-11);
        assert!((roots[1].value - hi).abs() < 1e-11);
    }

    #[test]
    fn no_real_roots() {
        let p = UnivariatePolynomial::from_i64(&[1, 0, 1]);
        assert!(p.real_roots(1e-10).is_empty());
    }

    #[test]
    fn exact_integer_roots() {
        // t^3 - t = t(t-1)(t+1); midpoint hits 0 exactly during isolation.
        let p = UnivariatePolynomial::from_i64(&[0, -1, 0, 1]);
        let roots = p.real_roots(1e-12);
        let values: Vec<f64> = roots.iter().map(|r| r.value).collect();
        assert_eq!(values.len(), 3);
        for (got, want) in values.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() <= 2e-12, "{got} vs {want}");
        }
        // The middle root is hit exactly by the first midpoint probe.
        assert_eq!(values[1], 0.0);
    }

    #[test]
    fn multiple_roots_collapse() {
        // (t - 1)^2 (t + 2)
        let p = UnivariatePolynomial::from_i64(&[2, 3, 0, 1])
            .mul(UnivariatePolynomial::from_i64(&[-1, 1]));
        // p = (t^2+... ) build differently: (t-1)^2 (t+2) = t^3 - 3t + 2
        let p2 = UnivariatePolynomial::from_i64(&[2, -3, 0, 1]);
        let roots = p2.real_roots(1e-10);
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value + 2.0).abs() < 1e-9);
        assert!((roots[1].value - 1.0).abs() < 1e-9);
        drop(p);
    }

    #[test]
    fn constant_has_no_roots() {
        let p = UnivariatePolynomial::constant(rat(5));
        assert!(p.real_roots(1e-10).is_empty());
    }

    #[test]
    fn gcd_and_square_free() {
        let a = UnivariatePolynomial::from_i64(&[-1, 1]); // t - 1
        let b = UnivariatePolynomial::from_i64(&[1, 1]); // t + 1
        let p = &(&a * &a) * &b;
        let sf = p.square_free_part();
        assert_eq!(sf, &a * &b);
        let g = p.gcd(&(&a * &a));
        assert_eq!(g, &a * &a);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = UnivariatePolynomial::from_coeffs(vec![ratio(-7, 2), rat(0), rat(1)]);
        let b = p.cauchy_bound();
        assert!(b > ratio(7, 2).pow(1) * ratio(1, 2)); // sqrt(3.5) < bound
        for r in p.real_roots(1e-10) {
            assert!(r.value.abs() < rat_to_f64(&b));
        }
    }

    #[test]
    fn division_and_exact_div() {
        let p = UnivariatePolynomial::from_i64(&[-6, 11, -6, 1]); // (t-1)(t-2)(t-3)
        let d = UnivariatePolynomial::from_i64(&[-2, 1]);
        let q = p.exact_div(&d);
        assert_eq!(q, UnivariatePolynomial::from_i64(&[3, -4, 1]));
        let (q2, r2) = p.div_rem(&UnivariatePolynomial::from_i64(&[1, 1]));
        assert_eq!(&(&q2 * &UnivariatePolynomial::from_i64(&[1, 1])) + &r2, p);
        assert!(!r2.is_zero());
    }

    #[test]
    fn interval_evaluation_bounds() {
        let p = UnivariatePolynomial::from_i64(&[-2, 0, 1]); // t^2 - 2
        let (lo, hi) = p.eval_interval(&rat(1), &rat(2));
        assert!(lo <= rat(-1) && hi >= rat(2));
        let mid = p.eval_rat(&ratio(3, 2));
        assert!(lo <= mid && mid <= hi);
    }

    #[test]
    fn even_substitution() {
        let p = UnivariatePolynomial::from_i64(&[-2, 0, 5, 0, 1]); // t^4 + 5t^2 - 2
        let q = p.even_part_substituted().unwrap();
        assert_eq!(q, UnivariatePolynomial::from_i64(&[-2, 5, 1]));
        let odd = UnivariatePolynomial::from_i64(&[0, 1]);
        assert!(odd.even_part_substituted().is_none());
    }
}
