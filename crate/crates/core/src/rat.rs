//! Exact rational scalars used throughout the algebraic pipeline.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the ratio `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact binary expansion of a float. `None` for NaN or infinities.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Rounds a rational to the nearest `f64` without overflowing through
/// `BigInt -> f64` on huge numerators/denominators.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let numer = x.numer();
    let denom = x.denom();
    let nbits = numer.bits() as i64;
    let dbits = denom.bits() as i64;
    if nbits < 900 && dbits < 900 {
        let n = numer.to_f64().unwrap_or(f64::NAN);
        let d = denom.to_f64().unwrap_or(f64::NAN);
        return n / d;
    }
    // Scale so the quotient keeps ~80 significant bits, then divide.
    let shift = dbits - nbits + 80;
    let (scaled_n, scaled_d) = if shift >= 0 {
        (numer.abs() << shift as u64, denom.abs())
    } else {
        (numer.abs(), denom.abs() << (-shift) as u64)
    };
    let q = scaled_n / scaled_d;
    let mag = q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32);
    if numer.sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

/// Parses an integer literal or a `"p/q"` ratio string.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip_is_exact() {
        let x = rat_from_f64(0.1).unwrap();
        assert_eq!(rat_to_f64(&x), 0.1);
        assert_ne!(x, ratio(1, 10)); // 0.1 is not exactly 1/10 in binary
    }

    #[test]
    fn huge_ratio_converts() {
        // 3^2000 / 2^3000 is about 2^170.
        let big = Rat::new(BigInt::from(3).pow(2000u32), BigInt::from(2).pow(3000u32));
        let f = rat_to_f64(&big);
        assert!(f.is_finite() && f > 1e50 && f < 1e52, "{f}");
        let neg = -Rat::new(BigInt::from(7).pow(1200u32), BigInt::from(5).pow(1300u32));
        let g = rat_to_f64(&neg);
        assert!(g.is_finite() && g < -1e104, "{g}");
        // Near-unit huge ratio stays accurate.
        let x = Rat::new(
            BigInt::from(3).pow(1000u32) * 7,
            BigInt::from(3).pow(1000u32) * 2,
        );
        assert!((rat_to_f64(&x) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(rat_from_str("3/4").unwrap(), ratio(3, 4));
        assert_eq!(rat_from_str("-5").unwrap(), rat(-5));
        assert_eq!(rat_from_str("4/0"), None);
        assert_eq!(rat_to_string(&ratio(-6, 4)), "-3/2");
        assert_eq!(rat_to_string(&rat(7)), "7");
    }
}
