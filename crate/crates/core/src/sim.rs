//! Half-plane flow integration: an adaptive Dormand-Prince 5(4) pair with
//! dense output, terminated by an event at the first return to the
//! switching line `x = 0`.

use thiserror::Error;

use crate::centers::VectorFieldPair;
use crate::rat::rat_to_f64;
use crate::Side;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    /// The x-velocity at the start point is below the transversality
    /// threshold, so the departure side is undefined.
    #[error("tangential start: |x'| below transversality threshold")]
    TangentialStart,
    /// The field does not point into the requested half-plane at the start.
    #[error("field does not enter the requested side at the start point")]
    NotIntoSide,
    /// Time or step budget exhausted before the orbit returned to the line.
    #[error("no return to the switching line within the integration caps")]
    NoReturn,
    /// The state left the configured bounding box.
    #[error("orbit norm exceeded the blowup bound")]
    Blowup,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrateOpts {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_time: f64,
    pub max_steps: usize,
    /// Blowup bound on `max(|x|, |y|)`.
    pub bound: f64,
    /// Optional cap on the step size (used for dense plotting).
    pub max_step: Option<f64>,
}

impl Default for IntegrateOpts {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_time: 1e3,
            max_steps: 1_000_000,
            bound: 1e8,
            max_step: None,
        }
    }
}

/// One half-plane arc: interior samples plus the located return event.
#[derive(Debug, Clone)]
pub struct HalfOrbit {
    /// `(t, x, y)` at the start, each accepted step, and the terminal event.
    pub samples: Vec<(f64, f64, f64)>,
    /// Flow time at the return event.
    pub terminal_time: f64,
    /// Ordinate of the return point `(0, y_end)`.
    pub terminal_y: f64,
    pub side: Side,
}

/// Polynomial vector field compiled to f64 coefficients for fast stepping.
pub struct CompiledField {
    p: Vec<(i32, i32, f64)>,
    q: Vec<(i32, i32, f64)>,
}

impl CompiledField {
    pub fn new(field: &VectorFieldPair) -> Self {
        let compile = |poly: &crate::poly::BivariatePolynomial| {
            poly.terms()
                .map(|(&(i, j), c)| (i as i32, j as i32, rat_to_f64(c)))
                .collect()
        };
        Self {
            p: compile(&field.p),
            q: compile(&field.q),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        let ev = |terms: &[(i32, i32, f64)]| {
            terms
                .iter()
                .map(|&(i, j, c)| c * x.powi(i) * y.powi(j))
                .sum::<f64>()
        };
        (ev(&self.p), ev(&self.q))
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
// Error coefficients b - bhat.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output coefficients.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

type Vec2 = [f64; 2];

/// Quartic Hermite-style interpolant over one accepted step.
struct DenseSegment {
    r1: Vec2,
    r2: Vec2,
    r3: Vec2,
    r4: Vec2,
    r5: Vec2,
}

impl DenseSegment {
    fn new(y0: Vec2, y1: Vec2, h: f64, k: &[Vec2; 7]) -> Self {
        let mut seg = DenseSegment {
            r1: y0,
            r2: [0.0; 2],
            r3: [0.0; 2],
            r4: [0.0; 2],
            r5: [0.0; 2],
        };
        for i in 0..2 {
            let diff = y1[i] - y0[i];
            seg.r2[i] = diff;
            seg.r3[i] = h * k[0][i] - diff;
            seg.r4[i] = diff - h * k[6][i] - seg.r3[i];
            seg.r5[i] = h
                * (D1 * k[0][i]
                    + D3 * k[2][i]
                    + D4 * k[3][i]
                    + D5 * k[4][i]
                    + D6 * k[5][i]
                    + D7 * k[6][i]);
        }
        seg
    }

    fn eval(&self, theta: f64) -> Vec2 {
        let mut out = [0.0; 2];
        let om = 1.0 - theta;
        for i in 0..2 {
            out[i] = self.r1[i]
                + theta * (self.r2[i] + om * (self.r3[i] + theta * (self.r4[i] + om * self.r5[i])));
        }
        out
    }
}

struct Step {
    y1: Vec2,
    k: [Vec2; 7],
    err_norm: f64,
}

fn rk_step(f: &CompiledField, y0: Vec2, h: f64, k1: Vec2, opts: &IntegrateOpts) -> Step {
    let at = |v: Vec2| f.eval(v[0], v[1]);
    let lin = |coefs: &[(f64, Vec2)]| {
        let mut out = y0;
        for &(c, v) in coefs {
            out[0] += h * c * v[0];
            out[1] += h * c * v[1];
        }
        out
    };
    let k2 = at(lin(&[(A21, k1)])).into();
    let k2: Vec2 = k2;
    let k3: Vec2 = at(lin(&[(A31, k1), (A32, k2)])).into();
    let k4: Vec2 = at(lin(&[(A41, k1), (A42, k2), (A43, k3)])).into();
    let k5: Vec2 = at(lin(&[(A51, k1), (A52, k2), (A53, k3), (A54, k4)])).into();
    let k6: Vec2 = at(lin(&[
        (A61, k1),
        (A62, k2),
        (A63, k3),
        (A64, k4),
        (A65, k5),
    ]))
    .into();
    let y1 = lin(&[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)]);
    let k7: Vec2 = at(y1).into();
    let mut err_sq = 0.0;
    for i in 0..2 {
        let err = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = opts.abs_tol + opts.rel_tol * y0[i].abs().max(y1[i].abs());
        err_sq += (err / scale) * (err / scale);
    }
    Step {
        y1,
        k: [k1, k2, k3, k4, k5, k6, k7],
        err_norm: (err_sq / 2.0).sqrt(),
    }
}

fn initial_step(f: &CompiledField, y0: Vec2, opts: &IntegrateOpts) -> f64 {
    let (fx, fy) = f.eval(y0[0], y0[1]);
    let d0 = (y0[0].powi(2) + y0[1].powi(2)).sqrt().max(1e-5);
    let d1 = (fx * fx + fy * fy).sqrt().max(1e-10);
    let h = (0.01 * d0 / d1).min(1e-2);
    match opts.max_step {
        Some(cap) => h.min(cap),
        None => h,
    }
}

const TRANSVERSALITY_EPS: f64 = 1e-13;
const EVENT_X_TOL: f64 = 1e-12;
const EVENT_SUBSAMPLES: usize = 16;

/// Integrates the field from `(0, y0)` through the interior of `side` until
/// the orbit first returns to `x = 0`, locating the event on the dense
/// output to `|x| <= 1e-12`.
pub fn integrate_half(
    field: &VectorFieldPair,
    y0: f64,
    side: Side,
    opts: &IntegrateOpts,
) -> Result<HalfOrbit, SimError> {
    let f = CompiledField::new(field);
    integrate_half_compiled(&f, y0, side, opts)
}

pub fn integrate_half_compiled(
    f: &CompiledField,
    y0: f64,
    side: Side,
    opts: &IntegrateOpts,
) -> Result<HalfOrbit, SimError> {
    let sigma = side.sign();
    let (vx0, _) = f.eval(0.0, y0);
    if vx0.abs() < TRANSVERSALITY_EPS {
        return Err(SimError::TangentialStart);
    }
    if sigma * vx0 < 0.0 {
        return Err(SimError::NotIntoSide);
    }

    let mut t = 0.0;
    let mut state: Vec2 = [0.0, y0];
    let mut k1: Vec2 = f.eval(state[0], state[1]).into();
    let mut h = initial_step(f, state, opts);
    let mut samples = vec![(t, state[0], state[1])];
    let mut departed = false;
    let mut steps = 0usize;
    let mut rejects_at_departure = 0usize;

    while steps < opts.max_steps {
        if t + h > opts.max_time {
            h = opts.max_time - t;
            if h <= f64::EPSILON * opts.max_time {
                return Err(SimError::NoReturn);
            }
        }
        if let Some(cap) = opts.max_step {
            h = h.min(cap);
        }
        let step = rk_step(f, state, h, k1, opts);
        steps += 1;
        if step.err_norm > 1.0 {
            let factor = (0.9 * step.err_norm.powf(-0.2)).clamp(0.2, 1.0);
            h *= factor;
            continue;
        }

        let seg = DenseSegment::new(state, step.y1, h, &step.k);
        // Establish genuine departure into the interior before arming the
        // return event, shrinking the step if it flew past the whole arc.
        if !departed {
            let probe = seg.eval(1.0 / EVENT_SUBSAMPLES as f64);
            if sigma * probe[0] <= 0.0 {
                rejects_at_departure += 1;
                if rejects_at_departure > 60 {
                    return Err(SimError::TangentialStart);
                }
                h *= 0.25;
                continue;
            }
            departed = true;
        }

        // Scan the dense output for the first crossing back to x = 0.
        let mut prev_theta = 0.0;
        let mut prev_x = state[0];
        let mut event: Option<(f64, f64)> = None; // (theta_lo, theta_hi)
        for j in 1..=EVENT_SUBSAMPLES {
            let theta = j as f64 / EVENT_SUBSAMPLES as f64;
            let v = seg.eval(theta);
            let inside_before = sigma * prev_x > 0.0;
            let outside_now = sigma * v[0] <= 0.0;
            if inside_before && outside_now {
                event = Some((prev_theta, theta));
                break;
            }
            prev_theta = theta;
            prev_x = v[0];
        }

        if let Some((mut lo, mut hi)) = event {
            // Bisection on the dense output; x(lo) is strictly inside.
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let v = seg.eval(mid);
                if sigma * v[0] > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if v[0].abs() <= EVENT_X_TOL {
                    let t_event = t + mid * h;
                    let y_end = v[1];
                    samples.push((t_event, 0.0, y_end));
                    return Ok(HalfOrbit {
                        samples,
                        terminal_time: t_event,
                        terminal_y: y_end,
                        side,
                    });
                }
            }
            // Interval collapsed without meeting the x tolerance; take the
            // inner endpoint (still within a rounding error of the line).
            let v = seg.eval(hi);
            let t_event = t + hi * h;
            samples.push((t_event, 0.0, v[1]));
            return Ok(HalfOrbit {
                samples,
                terminal_time: t_event,
                terminal_y: v[1],
                side,
            });
        }

        t += h;
        state = step.y1;
        k1 = step.k[6]; // FSAL
        samples.push((t, state[0], state[1]));
        if state[0].abs() > opts.bound || state[1].abs() > opts.bound {
            return Err(SimError::Blowup);
        }
        let factor = if step.err_norm == 0.0 {
            5.0
        } else {
            (0.9 * step.err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Err(SimError::NoReturn)
}

/// Terminal ordinate of the half-plane arc from `(0, y0)`.
pub fn half_return_map(
    field: &VectorFieldPair,
    side: Side,
    y0: f64,
    opts: &IntegrateOpts,
) -> Result<f64, SimError> {
    integrate_half(field, y0, side, opts).map(|orbit| orbit.terminal_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin_system, BuiltinCase};
    use crate::centers::{CenterSpec, Family, LinearParams};
    use crate::rat::rat;

    fn circle_field() -> VectorFieldPair {
        // Lc(0, 0, 0, 1, 2): x' = -y, y' = x.
        let spec = CenterSpec::base(Family::Lc(LinearParams {
            a: rat(0),
            b: rat(0),
            c: rat(0),
            d: rat(1),
            omega: rat(2),
        }))
        .unwrap();
        spec.conjugated_field()
    }

    #[test]
    fn half_circle_returns_opposite_point() {
        let f = circle_field();
        let orbit = integrate_half(&f, -1.0, Side::Right, &IntegrateOpts::default()).unwrap();
        assert!(
            (orbit.terminal_y - 1.0).abs() < 1e-8,
            "{}",
            orbit.terminal_y
        );
        assert!((orbit.terminal_time - std::f64::consts::PI).abs() < 1e-8);
        // Interior samples stay on the chosen side (up to event tolerance).
        for &(_, x, _) in &orbit.samples {
            assert!(x >= -1e-9);
        }
    }

    #[test]
    fn return_map_is_involution_on_circle() {
        // The x -> -x symmetry of the circle makes the left map undo the
        // right map, so the composed full return is the identity.
        let f = circle_field();
        for a in [0.5, 1.0, 2.0] {
            let up = half_return_map(&f, Side::Right, -a, &IntegrateOpts::default()).unwrap();
            assert!((up - a).abs() < 1e-8);
            let back = half_return_map(&f, Side::Left, up, &IntegrateOpts::default()).unwrap();
            assert!((back + a).abs() < 1e-8);
        }
    }

    #[test]
    fn prop1_right_arc_hits_partner_ordinate() {
        let sys = builtin_system(BuiltinCase::Prop1);
        let field = sys.right.conjugated_field();
        let y1 = (24.0 - 339f64.sqrt()) / 3.0;
        let y2 = (24.0 + 339f64.sqrt()) / 3.0;
        let end = half_return_map(&field, Side::Right, y1, &IntegrateOpts::default()).unwrap();
        assert!((end - y2).abs() < 1e-6, "{end} vs {y2}");
    }

    #[test]
    fn prop3_right_arc() {
        let sys = builtin_system(BuiltinCase::Prop3);
        let field = sys.right.conjugated_field();
        let y1 = 13.0 - 131f64.sqrt();
        let y2 = 13.0 + 131f64.sqrt();
        let end = half_return_map(&field, Side::Right, y1, &IntegrateOpts::default()).unwrap();
        assert!((end - y2).abs() < 1e-6, "{end} vs {y2}");
    }

    #[test]
    fn prop5_left_arc_runs_downward() {
        let sys = builtin_system(BuiltinCase::Prop5);
        let field = sys.left.conjugated_field();
        let y_star = ((-5.0 + 33f64.sqrt()) / 2.0).sqrt();
        let end = half_return_map(&field, Side::Left, y_star, &IntegrateOpts::default()).unwrap();
        assert!((end + y_star).abs() < 1e-6, "{end} vs {}", -y_star);
    }

    #[test]
    fn first_integral_conserved_along_arc() {
        let sys = builtin_system(BuiltinCase::Prop1);
        let field = sys.left.conjugated_field();
        let h = sys.left.conjugated_integral();
        let y2 = (24.0 + 339f64.sqrt()) / 3.0;
        let orbit = integrate_half(&field, y2, Side::Left, &IntegrateOpts::default()).unwrap();
        let h0 = h.eval_f64(0.0, y2).unwrap();
        for &(_, x, y) in &orbit.samples {
            let v = h.eval_f64(x, y).unwrap();
            assert!(
                ((v - h0) / h0.abs().max(1.0)).abs() < 1e-8,
                "drift at ({x}, {y}): {v} vs {h0}"
            );
        }
    }

    #[test]
    fn tangential_start_detected() {
        let f = circle_field(); // x' = -y vanishes at y = 0
        assert!(matches!(
            integrate_half(&f, 0.0, Side::Right, &IntegrateOpts::default()),
            Err(SimError::TangentialStart)
        ));
    }

    #[test]
    fn wrong_direction_detected() {
        let f = circle_field(); // at y = -1, x' = +1 points right
        assert!(matches!(
            integrate_half(&f, -1.0, Side::Left, &IntegrateOpts::default()),
            Err(SimError::NotIntoSide)
        ));
    }

    #[test]
    fn tolerance_refinement_converges() {
        let f = circle_field();
        let exact = 1.0;
        let coarse_opts = IntegrateOpts {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            ..Default::default()
        };
        let fine_opts = IntegrateOpts {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            ..Default::default()
        };
        let coarse = half_return_map(&f, Side::Right, -1.0, &coarse_opts).unwrap();
        let fine = half_return_map(&f, Side::Right, -1.0, &fine_opts).unwrap();
        let prior_err = (coarse - exact).abs().max(1e-12);
        assert!((fine - coarse).abs() <= 10.0 * prior_err);
    }

    #[test]
    fn blowup_detected() {
        // x' = 1 + x^2 escapes in finite time; no return to x = 0.
        use crate::poly::BivariatePolynomial;
        let field = VectorFieldPair {
            p: BivariatePolynomial::from_terms([((0, 0), rat(1)), ((2, 0), rat(1))]),
            q: BivariatePolynomial::from_terms([((0, 0), rat(1))]),
        };
        let opts = IntegrateOpts {
            bound: 1e6,
            ..Default::default()
        };
        assert!(matches!(
            integrate_half(&field, 0.0, Side::Right, &opts),
            Err(SimError::Blowup)
        ));
    }
}
