//! Exact interval arithmetic over rationals, used for certified candidate
//! pairing and pole separation.

use num_traits::Signed;

use crate::rat::Rat;

pub type Interval = (Rat, Rat);

pub fn mul(a: &Interval, b: &Interval) -> Interval {
    let candidates = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = candidates[0].clone();
    let mut hi = candidates[0].clone();
    for v in &candidates[1..] {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

pub fn neg(a: &Interval) -> Interval {
    (-a.1.clone(), -a.0.clone())
}

pub fn contains_zero(a: &Interval) -> bool {
    !a.0.is_positive() && !a.1.is_negative()
}

/// Division by a sign-definite interval (must not contain zero).
pub fn div(a: &Interval, b: &Interval) -> Interval {
    debug_assert!(!contains_zero(b), "interval division by zero");
    let candidates = [&a.0 / &b.0, &a.0 / &b.1, &a.1 / &b.0, &a.1 / &b.1];
    let mut lo = candidates[0].clone();
    let mut hi = candidates[0].clone();
    for v in &candidates[1..] {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

pub fn width(a: &Interval) -> Rat {
    &a.1 - &a.0
}

pub fn point(x: &Rat) -> Interval {
    (x.clone(), x.clone())
}

#[allow(dead_code)]
pub fn is_zero_width(a: &Interval) -> bool {
    a.0 == a.1
}
