//! Solves a closing system for candidate crossing pairs: exact substitution
//! when one equation is linear in an ordinate, resultant elimination plus
//! certified pairing otherwise.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::closing::surd::{exact_value_for_root, ExactValue};
use crate::closing::{ClosingError, ClosingSystem};
use crate::poly::interval as iv;
use crate::poly::{resultant, PolyError, RootInterval, UnivariatePolynomial, Var};
use crate::rat::{rat_from_f64, Rat};
use crate::Side;

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Relative residual ceiling for accepting a paired root (algebraic
    /// residual tolerance).
    pub residual_tol: f64,
    /// Target half-width of isolating intervals.
    pub isolation_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            isolation_tol: 1e-12,
        }
    }
}

/// One ordinate of a candidate pair: float refinement, the exact isolating
/// interval, and a closed form when the defining polynomial is simple.
#[derive(Debug, Clone)]
pub struct OrdinateRoot {
    pub value: f64,
    pub interval: RootInterval,
    pub exact: Option<ExactValue>,
}

/// An algebraic solution of the closing system with `y1 < y2`.
#[derive(Debug, Clone)]
pub struct CandidatePair {
    pub y1: OrdinateRoot,
    pub y2: OrdinateRoot,
    /// Value of the right half's restricted integral at `(0, y1)`.
    pub level_right: f64,
    /// Value of the left half's restricted integral at `(0, y1)`.
    pub level_left: f64,
    pub residual_f1: f64,
    pub residual_f2: f64,
}

/// A solution dropped because an ordinate sits on a cleared-denominator
/// root (the integral has no value there).
#[derive(Debug, Clone)]
pub struct PoleRejection {
    pub y1: f64,
    pub y2: f64,
    pub pole: f64,
    pub half: Side,
}

#[derive(Debug, Clone, Default)]
pub struct SolveOutcome {
    pub candidates: Vec<CandidatePair>,
    pub pole_rejections: Vec<PoleRejection>,
}

/// Eliminates one ordinate, isolates the eliminant's real roots, pairs
/// them, filters `y1 < y2`, deduplicates mirrors, and excludes pole hits.
pub fn solve_closing(
    cs: &ClosingSystem,
    opts: &SolveOptions,
) -> Result<SolveOutcome, ClosingError> {
    if cs.continuum {
        return Err(ClosingError::ContinuumDetected);
    }
    let deg1 = cs.f1.degree().unwrap_or(0);
    let deg2 = cs.f2.degree().unwrap_or(0);
    if deg1 == 0 || deg2 == 0 {
        return Ok(SolveOutcome::default());
    }
    if cs.f1 == cs.f2 {
        return Err(ClosingError::ContinuumDetected);
    }
    if cs.is_w_free() {
        return solve_w_free(cs);
    }

    let d1_in_y1 = cs.f1.degree_in(Var::X).unwrap_or(0);
    let d2_in_y1 = cs.f2.degree_in(Var::X).unwrap_or(0);
    let pairs = if d1_in_y1 == 1 {
        solve_substitution(cs, &cs.f1, &cs.f2, opts)?
    } else if d2_in_y1 == 1 {
        solve_substitution(cs, &cs.f2, &cs.f1, opts)?
    } else {
        solve_resultant(cs, opts)?
    };
    Ok(finish(cs, pairs, opts))
}

/// Paired isolating data before level/pole processing. The two intervals
/// isolate roots of `eliminant_sf`.
struct RawPair {
    lo: RootInterval,
    hi: RootInterval,
    eliminant_sf: UnivariatePolynomial,
}

/// Both closing polynomials depend only on `z = y1 + y2`: either the two
/// univariate conditions are inconsistent (no candidates) or they share a
/// real root and every pair on that line solves the system.
fn solve_w_free(cs: &ClosingSystem) -> Result<SolveOutcome, ClosingError> {
    let (p1, p2) = cs
        .symmetric_form
        .as_ref()
        .expect("w-free implies symmetric form");
    let u1 = p1.restrict_zero(Var::Y);
    let u2 = p2.restrict_zero(Var::Y);
    let g = u1.gcd(&u2);
    if g.degree().unwrap_or(0) >= 1 && !g.isolate_real_roots().is_empty() {
        return Err(ClosingError::ContinuumDetected);
    }
    Ok(SolveOutcome::default())
}

/// The linear equation `lin = u(y2) y1 + v(y2)`; substituting
/// `y1 = -v/u` into `other` and clearing `u` powers gives the eliminant.
fn solve_substitution(
    cs: &ClosingSystem,
    lin: &crate::poly::BivariatePolynomial,
    other: &crate::poly::BivariatePolynomial,
    opts: &SolveOptions,
) -> Result<Vec<RawPair>, ClosingError> {
    let lin_coeffs = lin.as_univariate_in(Var::X);
    let v = lin_coeffs[0].clone();
    let u = lin_coeffs[1].clone();
    let g_coeffs = other.as_univariate_in(Var::X);
    let d = g_coeffs.len() - 1;
    debug_assert!(d >= 1);
    let neg_v = -&v;
    // E(y2) = sum_k g_k(y2) (-v)^k u^(d-k)
    let mut pow_nv = vec![UnivariatePolynomial::constant(Rat::one())];
    let mut pow_u = vec![UnivariatePolynomial::constant(Rat::one())];
    for _ in 0..d {
        pow_nv.push(pow_nv.last().unwrap() * &neg_v);
        pow_u.push(pow_u.last().unwrap() * &u);
    }
    let mut eliminant = UnivariatePolynomial::zero();
    for (k, gk) in g_coeffs.iter().enumerate() {
        if gk.is_zero() {
            continue;
        }
        eliminant = &eliminant + &(&(gk * &pow_nv[k]) * &pow_u[d - k]);
    }
    if eliminant.is_zero() {
        return Err(ClosingError::ContinuumDetected);
    }
    let e_sf = eliminant.square_free_part();
    if e_sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    // If u shares a root with the eliminant the substitution breaks down at
    // that root; fall back to the fully general elimination.
    if !u.is_zero() && u.gcd(&e_sf).degree().unwrap_or(0) >= 1 {
        return solve_resultant(cs, opts);
    }

    let tol = rat_from_f64(opts.isolation_tol).unwrap();
    let mut roots: Vec<RootInterval> = e_sf
        .isolate_real_roots()
        .into_iter()
        .map(|r| UnivariatePolynomial::refine_interval(&e_sf, &r, &tol))
        .collect();

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..roots.len() {
        if let Some(j) = partner_index(&e_sf, &u, &v, &mut roots, i) {
            if i != j {
                pairs.insert((i.min(j), i.max(j)));
            }
        }
    }
    Ok(pairs
        .into_iter()
        .map(|(i, j)| RawPair {
            lo: roots[i].clone(),
            hi: roots[j].clone(),
            eliminant_sf: e_sf.clone(),
        })
        .collect())
}

/// Index of the isolating interval containing `-v/u` at the root isolated
/// by `roots[i]`, refining intervals until the location is unambiguous.
fn partner_index(
    e_sf: &UnivariatePolynomial,
    u: &UnivariatePolynomial,
    v: &UnivariatePolynomial,
    roots: &mut [RootInterval],
    i: usize,
) -> Option<usize> {
    let two = Rat::from_integer(2.into());
    let mut y2 = roots[i].clone();
    let mut shrink = y2.width();
    for _ in 0..256 {
        let u_iv = u.eval_interval(&y2.lo, &y2.hi);
        if iv::contains_zero(&u_iv) {
            shrink /= &two;
            y2 = UnivariatePolynomial::refine_interval(e_sf, &y2, &shrink);
            continue;
        }
        let v_iv = v.eval_interval(&y2.lo, &y2.hi);
        let j_iv = iv::div(&iv::neg(&v_iv), &u_iv);
        let j_root = RootInterval {
            lo: j_iv.0.clone(),
            hi: j_iv.1.clone(),
        };
        let overlapping: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.overlaps(&j_root))
            .map(|(k, _)| k)
            .collect();
        match overlapping.len() {
            1 => return Some(overlapping[0]),
            0 => return None,
            _ => {
                shrink /= &two;
                y2 = UnivariatePolynomial::refine_interval(e_sf, &y2, &shrink);
                for k in overlapping {
                    let w = roots[k].width() / &two;
                    if !w.is_zero() {
                        roots[k] = UnivariatePolynomial::refine_interval(e_sf, &roots[k], &w);
                    }
                }
            }
        }
        if shrink.is_zero() {
            break;
        }
    }
    None
}

/// General elimination: resultant in `y1`, isolate the eliminant's roots,
/// and accept pairs whose residuals vanish within certified boxes.
fn solve_resultant(cs: &ClosingSystem, opts: &SolveOptions) -> Result<Vec<RawPair>, ClosingError> {
    let r = match resultant(&cs.f1, &cs.f2, Var::X) {
        Ok(r) => r,
        Err(PolyError::DegenerateInput) => return Ok(Vec::new()),
        Err(_) => unreachable!("resultant only raises DegenerateInput"),
    };
    if r.is_zero() {
        return Err(ClosingError::ContinuumDetected);
    }
    let e_sf = r.square_free_part();
    if e_sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let tol = rat_from_f64(opts.isolation_tol).unwrap();
    let roots: Vec<RootInterval> = e_sf
        .isolate_real_roots()
        .into_iter()
        .map(|root| UnivariatePolynomial::refine_interval(&e_sf, &root, &tol))
        .collect();

    let mut pairs = Vec::new();
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let box1 = (
                (roots[i].lo.clone(), roots[i].hi.clone()),
                (roots[j].lo.clone(), roots[j].hi.clone()),
            );
            let r1 = cs.f1.eval_interval_box(&box1.0, &box1.1);
            if !iv::contains_zero(&r1) {
                continue;
            }
            let r2 = cs.f2.eval_interval_box(&box1.0, &box1.1);
            if !iv::contains_zero(&r2) {
                continue;
            }
            let (u, v) = (roots[i].to_f64(), roots[j].to_f64());
            if rel_residual(&cs.f1, u, v) > opts.residual_tol
                || rel_residual(&cs.f2, u, v) > opts.residual_tol
            {
                continue;
            }
            pairs.push(RawPair {
                lo: roots[i].clone(),
                hi: roots[j].clone(),
                eliminant_sf: e_sf.clone(),
            });
        }
    }
    Ok(pairs)
}

fn rel_residual(f: &crate::poly::BivariatePolynomial, y1: f64, y2: f64) -> f64 {
    let val = f.eval_f64(y1, y2).abs();
    let scale = f.eval_abs_f64(y1, y2).max(1.0);
    val / scale
}

/// Levels, residual reporting, pole exclusion, and final ordering.
fn finish(cs: &ClosingSystem, pairs: Vec<RawPair>, opts: &SolveOptions) -> SolveOutcome {
    let tol = rat_from_f64(opts.isolation_tol).unwrap();
    let mut poles: Vec<(Side, UnivariatePolynomial, RootInterval)> = Vec::new();
    for (side, d) in [(Side::Right, &cs.d1), (Side::Left, &cs.d2)] {
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        let d_sf = d.square_free_part();
        for root in d_sf.isolate_real_roots() {
            let refined = UnivariatePolynomial::refine_interval(&d_sf, &root, &tol);
            poles.push((side, d_sf.clone(), refined));
        }
    }

    let mut outcome = SolveOutcome::default();
    'pairs: for pair in pairs {
        for (side, d_sf, pole) in &poles {
            for ord in [&pair.lo, &pair.hi] {
                if !separated(&pair.eliminant_sf, ord, d_sf, pole) {
                    outcome.pole_rejections.push(PoleRejection {
                        y1: pair.lo.to_f64(),
                        y2: pair.hi.to_f64(),
                        pole: pole.to_f64(),
                        half: *side,
                    });
                    continue 'pairs;
                }
            }
        }
        let exact_lo = exact_value_for_root(&pair.eliminant_sf, &pair.lo);
        let exact_hi = exact_value_for_root(&pair.eliminant_sf, &pair.hi);
        // An exact closed form beats the bisection midpoint.
        let y1v = exact_lo
            .as_ref()
            .map(ExactValue::to_f64)
            .unwrap_or_else(|| pair.lo.to_f64());
        let y2v = exact_hi
            .as_ref()
            .map(ExactValue::to_f64)
            .unwrap_or_else(|| pair.hi.to_f64());
        outcome.candidates.push(CandidatePair {
            y1: OrdinateRoot {
                value: y1v,
                exact: exact_lo,
                interval: pair.lo,
            },
            y2: OrdinateRoot {
                value: y2v,
                exact: exact_hi,
                interval: pair.hi,
            },
            level_right: cs.h_right.eval_f64(y1v),
            level_left: cs.h_left.eval_f64(y1v),
            residual_f1: cs.f1.eval_f64(y1v, y2v).abs(),
            residual_f2: cs.f2.eval_f64(y1v, y2v).abs(),
        });
    }
    outcome.candidates.sort_by(|a, b| {
        (a.y1.value, a.y2.value)
            .partial_cmp(&(b.y1.value, b.y2.value))
            .unwrap()
    });
    outcome
}

/// Proves the two isolated roots distinct by refining both intervals until
/// they separate; returns false on an exact hit or when separation cannot
/// be certified.
fn separated(
    a_poly: &UnivariatePolynomial,
    a: &RootInterval,
    b_poly: &UnivariatePolynomial,
    b: &RootInterval,
) -> bool {
    let two = Rat::from_integer(2.into());
    let mut a = a.clone();
    let mut b = b.clone();
    for _ in 0..90 {
        if !a.overlaps(&b) {
            return true;
        }
        let wa = a.width();
        let wb = b.width();
        if wa.is_zero() && wb.is_zero() {
            // Two exact points that overlap are equal.
            return false;
        }
        if !wa.is_zero() {
            a = UnivariatePolynomial::refine_interval(a_poly, &a, &(wa / &two));
        }
        if !wb.is_zero() {
            b = UnivariatePolynomial::refine_interval(b_poly, &b, &(wb / &two));
        }
    }
    false
}
