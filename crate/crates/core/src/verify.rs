//! Certifies or rejects algebraic candidate pairs against the actual
//! piecewise flow: a closing-equation solution is only a crossing limit
//! cycle if both endpoints are transversal crossing points with opposite
//! transit directions and both half-plane arcs close the loop.

use thiserror::Error;

use crate::closing::{
    bezout_bound, build_closing_system, solve_closing, BezoutRecord, CandidatePair, ClosingError,
    ClosingSystem, PiecewiseSystem, PoleRejection, SolveOptions,
};
use crate::sim::{integrate_half_compiled, CompiledField, HalfOrbit, IntegrateOpts, SimError};
use crate::Side;

/// Classification of one candidate pair after flow checking.
#[derive(Debug, Clone, PartialEq)]
pub enum CycleStatus {
    VerifiedCrossingCycle,
    /// An endpoint sits on a cleared-denominator root.
    SpuriousPole,
    /// An endpoint lies where the two fields push in opposite directions
    /// (sliding/escaping region), so no orbit crosses there.
    SpuriousNonCrossingRegion,
    /// Both endpoints cross, but in the same direction, so the two arcs
    /// cannot be traversed consistently in time.
    SpuriousOrientation,
    /// A half-plane arc fails to connect the two endpoints (disconnected
    /// level-set branch, non-returning or escaping orbit).
    SpuriousDisconnected,
    /// Verification could not decide (tangential endpoint).
    Unverifiable(String),
}

/// Transversality report at one point of the switching line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossingVerdict {
    /// Both x-velocities are nonzero with equal sign.
    Crossing,
    /// Some x-velocity vanishes (within threshold).
    Tangent,
    /// Nonzero x-velocities of opposite sign.
    Sliding,
}

#[derive(Debug, Clone, Copy)]
pub struct CrossingCheck {
    pub x_velocity_right: f64,
    pub x_velocity_left: f64,
    pub verdict: CrossingVerdict,
}

/// A candidate pair together with the flow verdict and diagnostics.
#[derive(Debug, Clone)]
pub struct CycleCertificate {
    pub candidate: CandidatePair,
    pub status: CycleStatus,
    /// `|y_return - y_expected|` for the right and left arcs (NaN when the
    /// arc was not integrated).
    pub closure_errors: (f64, f64),
    /// x-velocity pairs (right field, left field) at `(0, y1)` and `(0, y2)`.
    pub crossing_signs: (CrossingCheck, CrossingCheck),
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Acceptance threshold on each arc's endpoint error.
    pub closure_tol: f64,
    pub integrate: IntegrateOpts,
    pub solve: SolveOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            closure_tol: 1e-6,
            integrate: IntegrateOpts::default(),
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Closing(#[from] ClosingError),
    /// The verified count exceeded the degree bound; indicates a solver
    /// defect and is surfaced rather than silently reported.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

const TANGENT_EPS: f64 = 1e-13;

/// Signs of the two one-sided x-velocities at `(0, y)`; the point is a
/// crossing point iff both are nonzero with the same sign.
pub fn check_crossing_region(pw: &PiecewiseSystem, y: f64) -> CrossingCheck {
    let vr = pw.right.conjugated_field().p.eval_f64(0.0, y);
    let vl = pw.left.conjugated_field().p.eval_f64(0.0, y);
    let verdict = if vr.abs() < TANGENT_EPS || vl.abs() < TANGENT_EPS {
        CrossingVerdict::Tangent
    } else if (vr > 0.0) == (vl > 0.0) {
        CrossingVerdict::Crossing
    } else {
        CrossingVerdict::Sliding
    };
    CrossingCheck {
        x_velocity_right: vr,
        x_velocity_left: vl,
        verdict,
    }
}

fn arc_closure(
    field: &CompiledField,
    side: Side,
    from: f64,
    expect: f64,
    opts: &IntegrateOpts,
) -> Result<(f64, HalfOrbit), SimError> {
    let orbit = integrate_half_compiled(field, from, side, opts)?;
    Ok(((orbit.terminal_y - expect).abs(), orbit))
}

/// Runs the spurious-solution taxonomy on one candidate: pole hit,
/// non-crossing endpoint, inconsistent orientation, then actual flow
/// closure of both half arcs.
pub fn verify_candidate(
    pw: &PiecewiseSystem,
    cs: &ClosingSystem,
    cand: &CandidatePair,
    opts: &VerifyOptions,
) -> CycleCertificate {
    let (y1, y2) = (cand.y1.value, cand.y2.value);
    let check1 = check_crossing_region(pw, y1);
    let check2 = check_crossing_region(pw, y2);
    let base = |status: CycleStatus| CycleCertificate {
        candidate: cand.clone(),
        status,
        closure_errors: (f64::NAN, f64::NAN),
        crossing_signs: (check1, check2),
    };

    // Pole re-check (solver excludes these; hand-built candidates may not).
    for d in [&cs.d1, &cs.d2] {
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        for y in [y1, y2] {
            if d.eval_f64(y).abs() < 1e-9 {
                return base(CycleStatus::SpuriousPole);
            }
        }
    }

    for check in [&check1, &check2] {
        match check.verdict {
            CrossingVerdict::Tangent => {
                return base(CycleStatus::Unverifiable(
                    "tangential endpoint on the switching line".into(),
                ))
            }
            CrossingVerdict::Sliding => return base(CycleStatus::SpuriousNonCrossingRegion),
            CrossingVerdict::Crossing => {}
        }
    }
    let sigma1 = check1.x_velocity_right > 0.0;
    let sigma2 = check2.x_velocity_right > 0.0;
    if sigma1 == sigma2 {
        return base(CycleStatus::SpuriousOrientation);
    }

    // Orientation: integrate the right half from the endpoint where the
    // field enters x > 0, the left half from the other.
    let (right_from, right_expect) = if sigma1 { (y1, y2) } else { (y2, y1) };
    let (left_from, left_expect) = (right_expect, right_from);
    let right_field = CompiledField::new(&pw.right.conjugated_field());
    let left_field = CompiledField::new(&pw.left.conjugated_field());

    let right = arc_closure(
        &right_field,
        Side::Right,
        right_from,
        right_expect,
        &opts.integrate,
    );
    let left = arc_closure(
        &left_field,
        Side::Left,
        left_from,
        left_expect,
        &opts.integrate,
    );

    let mut closure = (f64::NAN, f64::NAN);
    let mut disconnected = false;
    for (result, slot) in [(&right, 0usize), (&left, 1usize)] {
        match result {
            Ok((err, _)) => {
                if slot == 0 {
                    closure.0 = *err;
                } else {
                    closure.1 = *err;
                }
            }
            Err(SimError::TangentialStart) | Err(SimError::NotIntoSide) => {
                return base(CycleStatus::Unverifiable(
                    "arc start not transversal".into(),
                ));
            }
            // A non-returning or escaping arc is how a disconnected level
            // branch manifests under the caps.
            Err(SimError::NoReturn) | Err(SimError::Blowup) => disconnected = true,
        }
    }
    let status = if disconnected
        || closure.0.is_nan()
        || closure.1.is_nan()
        || closure.0 > opts.closure_tol
        || closure.1 > opts.closure_tol
    {
        CycleStatus::SpuriousDisconnected
    } else {
        CycleStatus::VerifiedCrossingCycle
    };
    CycleCertificate {
        candidate: cand.clone(),
        status,
        closure_errors: closure,
        crossing_signs: (check1, check2),
    }
}

/// Full pipeline result for one piecewise system.
#[derive(Debug, Clone)]
pub struct CycleSearch {
    pub closing: ClosingSystem,
    pub bound: Option<BezoutRecord>,
    pub certificates: Vec<CycleCertificate>,
    pub pole_rejections: Vec<PoleRejection>,
    pub continuum: bool,
}

impl CycleSearch {
    pub fn verified_count(&self) -> usize {
        self.certificates
            .iter()
            .filter(|c| c.status == CycleStatus::VerifiedCrossingCycle)
            .count()
    }
}

/// Builds the closing system, bounds it, solves it, and verifies every
/// candidate against the flow.
pub fn find_cycles(pw: &PiecewiseSystem, opts: &VerifyOptions) -> Result<CycleSearch, VerifyError> {
    let closing = build_closing_system(pw)?;
    if closing.continuum {
        return Ok(CycleSearch {
            closing,
            bound: None,
            certificates: Vec::new(),
            pole_rejections: Vec::new(),
            continuum: true,
        });
    }
    let bound = bezout_bound(&closing).expect("continuum handled above");
    let (certificates, pole_rejections, continuum) = match solve_closing(&closing, &opts.solve) {
        Ok(outcome) => {
            let certs: Vec<CycleCertificate> = outcome
                .candidates
                .iter()
                .map(|cand| verify_candidate(pw, &closing, cand, opts))
                .collect();
            (certs, outcome.pole_rejections, false)
        }
        Err(ClosingError::ContinuumDetected) => (Vec::new(), Vec::new(), true),
        Err(e) => return Err(e.into()),
    };
    let search = CycleSearch {
        closing,
        bound: Some(bound),
        certificates,
        pole_rejections,
        continuum,
    };
    if search.verified_count() as u64 > bound.cycle_bound {
        return Err(VerifyError::Inconsistency(format!(
            "verified {} cycles against a bound of {}",
            search.verified_count(),
            bound.cycle_bound
        )));
    }
    Ok(search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin_system, BuiltinCase};
    use crate::centers::{AffineMap, CenterSpec, Family, LinearParams, TimeSign};
    use crate::closing::solve::OrdinateRoot;
    use crate::poly::RootInterval;
    use crate::rat::{rat, rat_from_f64};

    fn lc(a: i64, b: i64, c: i64, d: i64, omega: i64) -> Family {
        Family::Lc(LinearParams {
            a: rat(a),
            b: rat(b),
            c: rat(c),
            d: rat(d),
            omega: rat(omega),
        })
    }

    fn hand_candidate(y1: f64, y2: f64) -> CandidatePair {
        let mk = |v: f64| OrdinateRoot {
            value: v,
            interval: RootInterval {
                lo: rat_from_f64(v).unwrap(),
                hi: rat_from_f64(v).unwrap(),
            },
            exact: None,
        };
        CandidatePair {
            y1: mk(y1),
            y2: mk(y2),
            level_right: f64::NAN,
            level_left: f64::NAN,
            residual_f1: 0.0,
            residual_f2: 0.0,
        }
    }

    #[test]
    fn crossing_region_examples() {
        // Circle field on both halves at (0, 1): x' = -1 on both sides.
        let circle = CenterSpec::base(lc(0, 0, 0, 1, 2)).unwrap();
        let pw = PiecewiseSystem {
            right: circle.clone(),
            left: circle.clone(),
        };
        let check = check_crossing_region(&pw, 1.0);
        assert_eq!(check.verdict, CrossingVerdict::Crossing);
        assert!(check.x_velocity_right < 0.0 && check.x_velocity_left < 0.0);
        // Tangency at y = 0.
        assert_eq!(
            check_crossing_region(&pw, 0.0).verdict,
            CrossingVerdict::Tangent
        );
        // Prop4 endpoints cross with opposite transit directions.
        let pw4 = builtin_system(BuiltinCase::Prop4);
        let at_minus = check_crossing_region(&pw4, -1.0);
        let at_plus = check_crossing_region(&pw4, 1.0);
        assert_eq!(at_minus.verdict, CrossingVerdict::Crossing);
        assert_eq!(at_plus.verdict, CrossingVerdict::Crossing);
        assert!((at_minus.x_velocity_right > 0.0) != (at_plus.x_velocity_right > 0.0));
    }

    #[test]
    fn builtin_cases_verify_expected_counts() {
        let expected = [1usize, 2, 1, 1, 1];
        for (case, want) in BuiltinCase::ALL.into_iter().zip(expected) {
            let pw = builtin_system(case);
            let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
            assert_eq!(search.verified_count(), want, "case {:?}", case);
            assert!(!search.continuum);
            for cert in &search.certificates {
                assert_eq!(cert.status, CycleStatus::VerifiedCrossingCycle);
                assert!(cert.closure_errors.0 + cert.closure_errors.1 <= 2e-6);
            }
        }
    }

    #[test]
    fn prop2_cycles_are_nested() {
        let pw = builtin_system(BuiltinCase::Prop2);
        let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        assert_eq!(search.certificates.len(), 2);
        let outer = &search.certificates[0].candidate;
        let inner = &search.certificates[1].candidate;
        assert!(outer.y1.value < inner.y1.value && inner.y2.value < outer.y2.value);
    }

    #[test]
    fn identical_halves_report_continuum() {
        let sys = builtin_system(BuiltinCase::Prop1);
        let pw = PiecewiseSystem {
            right: sys.left.clone(),
            left: sys.left.clone(),
        };
        let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        assert!(search.continuum);
        assert!(search.certificates.is_empty());
    }

    #[test]
    fn linear_linear_has_no_cycles() {
        let pw = PiecewiseSystem {
            right: CenterSpec::base(lc(0, 2, 0, 1, 1)).unwrap(),
            left: CenterSpec::base(lc(1, -1, 2, 2, 3)).unwrap(),
        };
        let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        assert_eq!(search.verified_count(), 0);
    }

    #[test]
    fn pole_endpoint_is_spurious() {
        let pw = builtin_system(BuiltinCase::Prop1);
        let cs = build_closing_system(&pw).unwrap();
        // y = 7/6 is the left integral's pole on the line.
        let cand = hand_candidate(7.0 / 6.0, 14.0);
        let cert = verify_candidate(&pw, &cs, &cand, &VerifyOptions::default());
        assert_eq!(cert.status, CycleStatus::SpuriousPole);
    }

    #[test]
    fn same_direction_transits_are_orientation_spurious() {
        // Both fields push rightward at both endpoints.
        let pw = PiecewiseSystem {
            right: CenterSpec::base(lc(0, 5, 0, 1, 1)).unwrap(),
            left: CenterSpec::base(lc(0, 5, 0, 1, 2)).unwrap(),
        };
        let cs = build_closing_system(&pw).unwrap();
        let cand = hand_candidate(-1.0, 1.0);
        let cert = verify_candidate(&pw, &cs, &cand, &VerifyOptions::default());
        assert_eq!(cert.status, CycleStatus::SpuriousOrientation);
    }

    #[test]
    fn sliding_region_endpoint_is_non_crossing() {
        // Right field pushes right, left field pushes left at y = -1:
        // circle vs time-reversed circle.
        let pw = PiecewiseSystem {
            right: CenterSpec::base(lc(0, 0, 0, 1, 2)).unwrap(),
            left: CenterSpec::new(lc(0, 0, 0, 1, 2), AffineMap::identity(), TimeSign::Reversed)
                .unwrap(),
        };
        let cs = build_closing_system(&pw).unwrap();
        let cand = hand_candidate(-1.0, 1.0);
        let cert = verify_candidate(&pw, &cs, &cand, &VerifyOptions::default());
        assert_eq!(cert.status, CycleStatus::SpuriousNonCrossingRegion);
    }

    #[test]
    fn pole_between_candidates_fails_closure() {
        // Right: circle-like linear center; left: an S1 image whose
        // denominator has both roots strictly between the two candidate
        // ordinates, so the left level branch through them is disconnected.
        let pw = PiecewiseSystem {
            right: CenterSpec::base(lc(0, 0, 0, 1, 1)).unwrap(),
            left: CenterSpec::new(
                Family::S1,
                AffineMap::from_i64([1, 2, -3, 0, 1, 0]),
                TimeSign::Reversed,
            )
            .unwrap(),
        };
        let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        assert_eq!(search.certificates.len(), 1, "expected one candidate pair");
        let cert = &search.certificates[0];
        let r = (7.0f64 / 3.0).sqrt();
        assert!((cert.candidate.y1.value + r).abs() < 1e-9);
        assert!((cert.candidate.y2.value - r).abs() < 1e-9);
        assert!(
            matches!(
                cert.status,
                CycleStatus::SpuriousDisconnected | CycleStatus::SpuriousPole
            ),
            "got {:?}",
            cert.status
        );
        assert_eq!(search.verified_count(), 0);
    }

    #[test]
    fn certificates_are_deterministic() {
        let pw = builtin_system(BuiltinCase::Prop5);
        let a = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        let b = find_cycles(&pw, &VerifyOptions::default()).unwrap();
        assert_eq!(a.certificates.len(), b.certificates.len());
        for (ca, cb) in a.certificates.iter().zip(&b.certificates) {
            assert_eq!(ca.status, cb.status);
            assert_eq!(ca.candidate.y1.value, cb.candidate.y1.value);
            assert_eq!(ca.closure_errors, cb.closure_errors);
        }
    }

    #[test]
    fn full_loop_soundness() {
        // For every verified cycle the composed half maps return to start.
        use crate::sim::half_return_map;
        for case in BuiltinCase::ALL {
            let pw = builtin_system(case);
            let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
            for cert in &search.certificates {
                if cert.status != CycleStatus::VerifiedCrossingCycle {
                    continue;
                }
                let y1 = cert.candidate.y1.value;
                let sigma1 = cert.crossing_signs.0.x_velocity_right > 0.0;
                let (first_field, first_side, second_field, second_side) = if sigma1 {
                    (
                        pw.right.conjugated_field(),
                        Side::Right,
                        pw.left.conjugated_field(),
                        Side::Left,
                    )
                } else {
                    (
                        pw.left.conjugated_field(),
                        Side::Left,
                        pw.right.conjugated_field(),
                        Side::Right,
                    )
                };
                let opts = IntegrateOpts::default();
                let mid = half_return_map(&first_field, first_side, y1, &opts).unwrap();
                let back = half_return_map(&second_field, second_side, mid, &opts).unwrap();
                assert!(
                    (back - y1).abs() <= 2.0 * 1e-6,
                    "case {case:?}: {back} vs {y1}"
                );
            }
        }
    }
}
