//! Exact closed forms for solver ordinates whose defining polynomial is
//! simple enough: rationals, quadratic surds, and square roots of quadratic
//! surds (biquadratic roots). Anything richer stays float-only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{RootInterval, UnivariatePolynomial};
use crate::rat::{rat_to_f64, rat_to_string, Rat};

/// An exactly known algebraic value in renderable form.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactValue {
    Rational(Rat),
    /// `(p + sign * t * sqrt(d)) / q` with `q > 0`, `t > 0`, `d` not a
    /// perfect square.
    Quadratic {
        p: BigInt,
        t: BigInt,
        d: BigInt,
        q: BigInt,
        sign: i8,
    },
    /// `sign * sqrt(inner)` with positive `inner`.
    SqrtOf {
        inner: Box<ExactValue>,
        sign: i8,
    },
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => rat_to_f64(r),
            ExactValue::Quadratic { p, t, d, q, sign } => {
                let p = p.to_f64().unwrap();
                let t = t.to_f64().unwrap();
                let d = d.to_f64().unwrap();
                let q = q.to_f64().unwrap();
                (p + f64::from(*sign) * t * d.sqrt()) / q
            }
            ExactValue::SqrtOf { inner, sign } => f64::from(*sign) * inner.to_f64().sqrt(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ExactValue::Rational(r) => rat_to_string(r),
            ExactValue::Quadratic { p, t, d, q, sign } => {
                let root = if t.is_one() {
                    format!("√{}", d)
                } else {
                    format!("{}√{}", t, d)
                };
                let op = if *sign > 0 { "+" } else { "-" };
                if p.is_zero() {
                    let signed = if *sign > 0 {
                        root
                    } else {
                        format!("-{}", root)
                    };
                    if q.is_one() {
                        signed
                    } else {
                        format!("{}/{}", signed, q)
                    }
                } else if q.is_one() {
                    format!("{} {} {}", p, op, root)
                } else {
                    format!("({} {} {})/{}", p, op, root, q)
                }
            }
            ExactValue::SqrtOf { inner, sign } => {
                let body = format!("√({})", inner.render());
                if *sign > 0 {
                    body
                } else {
                    format!("-{}", body)
                }
            }
        }
    }
}

/// Splits `n > 0` as `s^2 * d` with `d` square-free up to factors above the
/// trial-division bound.
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut s = BigInt::one();
    let mut d = n.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1000);
    while p <= limit {
        let p2 = &p * &p;
        while (&d % &p2).is_zero() {
            d /= &p2;
            s *= &p;
        }
        p += 1;
    }
    // Any remaining square is a single large one.
    let r = d.sqrt();
    if &r * &r == d {
        s *= &r;
        d = BigInt::one();
    }
    (s, d)
}

/// Divisors of `|n|`, complete only when `|n|` factors over primes below
/// the trial bound; `None` when factorization is out of reach.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    if m.is_zero() {
        return None;
    }
    if m > BigInt::from(1_000_000_000_000i64) {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= m && p <= limit {
        let mut k = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        if k > 0 {
            factors.push((p.clone(), k));
        }
        p += 1;
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divisors = vec![BigInt::one()];
    for (p, k) in factors {
        let mut extended = Vec::new();
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                extended.push(d * &pk);
                pk *= &p;
            }
        }
        divisors = extended;
        if divisors.len() > 4096 {
            return None;
        }
    }
    divisors.sort();
    divisors.dedup();
    Some(divisors)
}

/// Rational root of the primitive polynomial inside the interval, if any.
fn rational_root_in(poly: &UnivariatePolynomial, interval: &RootInterval) -> Option<Rat> {
    let prim = poly.canonical();
    let coeffs = prim.coeffs();
    let a0 = coeffs.first()?.numer().clone();
    let an = coeffs.last()?.numer().clone();
    if a0.is_zero() {
        let zero = Rat::zero();
        if interval.contains(&zero) && poly.eval_rat(&zero).is_zero() {
            return Some(zero);
        }
        return None;
    }
    let nums = small_divisors(&a0)?;
    let dens = small_divisors(&an)?;
    for num in &nums {
        for den in &dens {
            for sgn in [1, -1] {
                let cand = Rat::new(num * BigInt::from(sgn), den.clone());
                if interval.contains(&cand) && poly.eval_rat(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Surd for a root of the primitive integer quadratic `a t^2 + b t + c`
/// selected by the enclosing interval.
fn quadratic_surd(poly: &UnivariatePolynomial, interval: &RootInterval) -> Option<ExactValue> {
    let prim = poly.canonical();
    if prim.degree() != Some(2) {
        return None;
    }
    let a = prim.coeff(2).numer().clone();
    let b = prim.coeff(1).numer().clone();
    let c = prim.coeff(0).numer().clone();
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if !disc.is_positive() {
        return None;
    }
    let (s, d) = extract_square(&disc);
    if d.is_one() {
        // Perfect-square discriminant: the root is rational after all.
        for sign in [1i8, -1] {
            let val = Rat::new(-&b + BigInt::from(sign) * &s, BigInt::from(2) * &a);
            if interval.contains(&val) {
                return Some(ExactValue::Rational(val));
            }
        }
        return None;
    }
    let (mut p, mut t, mut q) = (-&b, s, BigInt::from(2) * &a);
    if q.is_negative() {
        p = -p;
        q = -q;
        // The branch labels swap along with the sign flip; branch selection
        // below is numeric, so nothing else to do.
    }
    let g = p.gcd(&t).gcd(&q);
    if !g.is_one() {
        p /= &g;
        t /= &g;
        q /= &g;
    }
    let mid = rat_to_f64(&interval.midpoint());
    let (pf, tf, df, qf) = (
        p.to_f64().unwrap(),
        t.to_f64().unwrap(),
        d.to_f64().unwrap(),
        q.to_f64().unwrap(),
    );
    let plus = (pf + tf * df.sqrt()) / qf;
    let minus = (pf - tf * df.sqrt()) / qf;
    let sign = if (plus - mid).abs() <= (minus - mid).abs() {
        1
    } else {
        -1
    };
    Some(ExactValue::Quadratic { p, t, d, q, sign })
}

/// Best-effort exact form for a root of the square-free polynomial `e_sf`
/// isolated by `interval`.
pub fn exact_value_for_root(
    e_sf: &UnivariatePolynomial,
    interval: &RootInterval,
) -> Option<ExactValue> {
    if let Some(r) = rational_root_in(e_sf, interval) {
        return Some(ExactValue::Rational(r));
    }
    if e_sf.degree() == Some(2) {
        return quadratic_surd(e_sf, interval);
    }
    // Biquadratic: p(t) even of degree 4 with a sign-definite interval.
    if e_sf.degree() == Some(4) && e_sf.is_even_poly() {
        let upoly = e_sf.even_part_substituted()?;
        let sign: i8 = if interval.lo.is_positive() {
            1
        } else if interval.hi.is_negative() {
            -1
        } else {
            return None;
        };
        let (lo2, hi2) = {
            let a = &interval.lo * &interval.lo;
            let b = &interval.hi * &interval.hi;
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let uiv = RootInterval { lo: lo2, hi: hi2 };
        let inner = if let Some(r) = rational_root_in(&upoly, &uiv) {
            ExactValue::Rational(r)
        } else {
            quadratic_surd(&upoly, &uiv)?
        };
        return Some(ExactValue::SqrtOf {
            inner: Box::new(inner),
            sign,
        });
    }
    None
}
