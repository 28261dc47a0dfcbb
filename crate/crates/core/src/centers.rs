//! The center families on each side of the switching line: a normalized
//! linear center and the four cubic isochronous centers with homogeneous
//! nonlinearities, together with their rational first integrals, affine
//! changes of variables, and the exact first-integral identity check.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::{AffineCoeffs, BivariatePolynomial, RationalFunction, Var};
use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CenterError {
    #[error("invalid linear-center parameters: {0}")]
    InvalidParameters(String),
    #[error("affine map is singular (a*beta - b*alpha = 0)")]
    SingularMap,
}

/// Invertible affine change of variables `x = a X + b Y + c`,
/// `y = alpha X + beta Y + gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl AffineMap {
    pub fn new(
        a: Rat,
        b: Rat,
        c: Rat,
        alpha: Rat,
        beta: Rat,
        gamma: Rat,
    ) -> Result<Self, CenterError> {
        let m = Self {
            a,
            b,
            c,
            alpha,
            beta,
            gamma,
        };
        if m.determinant().is_zero() {
            return Err(CenterError::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Self {
            a: rat(1),
            b: rat(0),
            c: rat(0),
            alpha: rat(0),
            beta: rat(1),
            gamma: rat(0),
        }
    }

    pub fn from_i64(v: [i64; 6]) -> Self {
        Self::new(
            rat(v[0]),
            rat(v[1]),
            rat(v[2]),
            rat(v[3]),
            rat(v[4]),
            rat(v[5]),
        )
        .expect("singular test map")
    }

    pub fn determinant(&self) -> Rat {
        &self.a * &self.beta - &self.b * &self.alpha
    }

    pub fn coeffs(&self) -> AffineCoeffs {
        AffineCoeffs {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.gamma.clone(),
        }
    }

    /// The map sending `(X, Y)` through `other` and then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: &self.a * &other.a + &self.b * &other.alpha,
            b: &self.a * &other.b + &self.b * &other.beta,
            c: &self.a * &other.c + &self.b * &other.gamma + &self.c,
            alpha: &self.alpha * &other.a + &self.beta * &other.alpha,
            beta: &self.alpha * &other.b + &self.beta * &other.beta,
            gamma: &self.alpha * &other.c + &self.beta * &other.gamma + &self.gamma,
        }
    }

    pub fn apply_f64(&self, x: f64, y: f64) -> (f64, f64) {
        let c = self.coeffs();
        (
            crate::rat::rat_to_f64(&c.a) * x
                + crate::rat::rat_to_f64(&c.b) * y
                + crate::rat::rat_to_f64(&c.c),
            crate::rat::rat_to_f64(&c.alpha) * x
                + crate::rat::rat_to_f64(&c.beta) * y
                + crate::rat::rat_to_f64(&c.gamma),
        )
    }
}

/// Parameters of the normalized linear center family.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub omega: Rat,
}

/// One of the five base center families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Normalized linear center with parameters `(A, B, C, D, omega)`,
    /// `D > 0`, `omega > 0`.
    Lc(LinearParams),
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Lc(_) => write!(f, "Lc"),
            Family::S1 => write!(f, "S1"),
            Family::S2 => write!(f, "S2"),
            Family::S3 => write!(f, "S3"),
            Family::S4 => write!(f, "S4"),
        }
    }
}

/// Forward or reversed time orientation; reversal negates the vector field
/// and leaves the first integral untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeSign {
    Forward,
    Reversed,
}

impl TimeSign {
    pub fn factor(self) -> Rat {
        match self {
            TimeSign::Forward => rat(1),
            TimeSign::Reversed => rat(-1),
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(TimeSign::Forward),
            -1 => Some(TimeSign::Reversed),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            TimeSign::Forward => 1,
            TimeSign::Reversed => -1,
        }
    }
}

/// A half-system: a base family carried through an invertible affine change
/// of variables, with an optional time reversal.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSpec {
    family: Family,
    map: AffineMap,
    time_sign: TimeSign,
}

/// Right-hand sides of the planar system `x' = P(x, y)`, `y' = Q(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldPair {
    pub p: BivariatePolynomial,
    pub q: BivariatePolynomial,
}

impl VectorFieldPair {
    pub fn eval_f64(&self, x: f64, y: f64) -> (f64, f64) {
        (self.p.eval_f64(x, y), self.q.eval_f64(x, y))
    }
}

fn poly(terms: &[((u32, u32), Rat)]) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(terms.iter().cloned())
}

fn validate_family(family: &Family) -> Result<(), CenterError> {
    if let Family::Lc(p) = family {
        if !p.d.is_positive() {
            return Err(CenterError::InvalidParameters(format!(
                "D must be positive, got {}",
                p.d
            )));
        }
        if !p.omega.is_positive() {
            return Err(CenterError::InvalidParameters(format!(
                "omega must be positive, got {}",
                p.omega
            )));
        }
    }
    Ok(())
}

/// The literal right-hand sides of the base family.
pub fn base_field(family: &Family) -> Result<VectorFieldPair, CenterError> {
    validate_family(family)?;
    let f = match family {
        Family::Lc(lp) => {
            // x' = -A x - (4A^2 + omega^2)/(4D) y + B, y' = D x + A y + C
            let a2 = &lp.a * &lp.a;
            let coef = (rat(4) * &a2 + &lp.omega * &lp.omega) / (rat(4) * &lp.d);
            VectorFieldPair {
                p: poly(&[
                    ((1, 0), -lp.a.clone()),
                    ((0, 1), -coef),
                    ((0, 0), lp.b.clone()),
                ]),
                q: poly(&[
                    ((1, 0), lp.d.clone()),
                    ((0, 1), lp.a.clone()),
                    ((0, 0), lp.c.clone()),
                ]),
            }
        }
        Family::S1 => VectorFieldPair {
            p: poly(&[((0, 1), rat(-1)), ((3, 0), rat(1)), ((1, 2), rat(-1))]),
            q: poly(&[((1, 0), rat(1)), ((2, 1), rat(1)), ((0, 3), rat(-1))]),
        },
        Family::S2 => VectorFieldPair {
            p: poly(&[((0, 1), rat(-1)), ((3, 0), rat(1)), ((1, 2), rat(-3))]),
            q: poly(&[((1, 0), rat(1)), ((2, 1), rat(3)), ((0, 3), rat(-1))]),
        },
        Family::S3 => VectorFieldPair {
            p: poly(&[((0, 1), rat(-1)), ((2, 1), rat(3))]),
            q: poly(&[((1, 0), rat(1)), ((3, 0), rat(-2)), ((1, 2), rat(9))]),
        },
        Family::S4 => VectorFieldPair {
            p: poly(&[((0, 1), rat(-1)), ((2, 1), rat(-3))]),
            q: poly(&[((1, 0), rat(1)), ((3, 0), rat(2)), ((1, 2), rat(-9))]),
        },
    };
    Ok(f)
}

/// The base family's first integral.
pub fn base_integral(family: &Family) -> Result<RationalFunction, CenterError> {
    validate_family(family)?;
    let x2y2 = poly(&[((2, 0), rat(1)), ((0, 2), rat(1))]);
    let h = match family {
        Family::Lc(lp) => {
            // 4 (D x + A y)^2 + 8 D (C x - B y) + omega^2 y^2
            let lin = poly(&[((1, 0), lp.d.clone()), ((0, 1), lp.a.clone())]);
            let sq = (&lin * &lin).scale(&rat(4));
            let cross = poly(&[
                ((1, 0), rat(8) * &lp.d * &lp.c),
                ((0, 1), rat(-8) * &lp.d * &lp.b),
            ]);
            let w2 = poly(&[((0, 2), &lp.omega * &lp.omega)]);
            RationalFunction::from_polynomial(&(&sq + &cross) + &w2)
        }
        Family::S1 => RationalFunction::new(x2y2, poly(&[((0, 0), rat(1)), ((1, 1), rat(2))])),
        Family::S2 => {
            RationalFunction::new(x2y2.pow(2), poly(&[((0, 0), rat(1)), ((1, 1), rat(4))]))
        }
        Family::S3 => RationalFunction::new(
            poly(&[
                ((2, 0), rat(1)),
                ((0, 2), rat(1)),
                ((4, 0), rat(-4)),
                ((6, 0), rat(4)),
            ]),
            poly(&[((0, 0), rat(-1)), ((2, 0), rat(3))]).pow(3),
        ),
        Family::S4 => RationalFunction::new(
            poly(&[
                ((2, 0), rat(1)),
                ((0, 2), rat(1)),
                ((4, 0), rat(4)),
                ((6, 0), rat(4)),
            ]),
            poly(&[((0, 0), rat(1)), ((2, 0), rat(3))]).pow(3),
        ),
    };
    Ok(h)
}

impl CenterSpec {
    pub fn new(family: Family, map: AffineMap, time_sign: TimeSign) -> Result<Self, CenterError> {
        validate_family(&family)?;
        if map.determinant().is_zero() {
            return Err(CenterError::SingularMap);
        }
        Ok(Self {
            family,
            map,
            time_sign,
        })
    }

    pub fn base(family: Family) -> Result<Self, CenterError> {
        Self::new(family, AffineMap::identity(), TimeSign::Forward)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn time_sign(&self) -> TimeSign {
        self.time_sign
    }

    /// Replaces the affine map by `map ∘ inner` (useful for re-parametrizing
    /// a spec in shifted coordinates).
    pub fn precompose(&self, inner: &AffineMap) -> Result<Self, CenterError> {
        Self::new(self.family.clone(), self.map.compose(inner), self.time_sign)
    }

    /// Pushforward of the base field under the change of variables: with
    /// `(x, y) = T(X, Y)`, the new field is `sign * DT^{-1} F(T(X, Y))`.
    pub fn conjugated_field(&self) -> VectorFieldPair {
        let f = base_field(&self.family).expect("validated at construction");
        let coeffs = self.map.coeffs();
        let det = self.map.determinant();
        let p_t = f.p.compose_affine(&coeffs);
        let q_t = f.q.compose_affine(&coeffs);
        let s = self.time_sign.factor() / det;
        let new_p = (&p_t.scale(&coeffs.beta) - &q_t.scale(&coeffs.b)).scale(&s);
        let new_q = (&q_t.scale(&coeffs.a) - &p_t.scale(&coeffs.alpha)).scale(&s);
        VectorFieldPair { p: new_p, q: new_q }
    }

    /// The base first integral composed with the affine substitution; the
    /// time orientation does not enter.
    pub fn conjugated_integral(&self) -> RationalFunction {
        base_integral(&self.family)
            .expect("validated at construction")
            .compose_affine(&self.map.coeffs())
    }
}

/// Outcome of the exact identity check `P dH/dx + Q dH/dy = 0`.
#[derive(Debug, Clone)]
pub struct IntegralCheck {
    pub ok: bool,
    /// Numerator of the derivative along the field; zero iff `ok`.
    pub residual: BivariatePolynomial,
}

/// Exact check that `h` is a first integral of `field`: the numerator of
/// `P H_x + Q H_y` over the common denominator must vanish identically.
pub fn field_preserves_integral(field: &VectorFieldPair, h: &RationalFunction) -> IntegralCheck {
    let n = h.numerator();
    let d = h.denominator();
    let nx = n.partial_derivative(Var::X);
    let ny = n.partial_derivative(Var::Y);
    let dx = d.partial_derivative(Var::X);
    let dy = d.partial_derivative(Var::Y);
    // d/dt (n/d) = (n' d - n d') / d^2 with ' along the field.
    let along_x = &(&nx * d) - &(n * &dx);
    let along_y = &(&ny * d) - &(n * &dy);
    let residual = &(&field.p * &along_x) + &(&field.q * &along_y);
    IntegralCheck {
        ok: residual.is_zero(),
        residual,
    }
}

/// Exact verification that the spec's conjugated field preserves its
/// conjugated integral.
pub fn verify_first_integral(spec: &CenterSpec) -> IntegralCheck {
    field_preserves_integral(&spec.conjugated_field(), &spec.conjugated_integral())
}
