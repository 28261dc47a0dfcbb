//! Brute-force 2-D oracle for closing systems: column scan over y2 with
//! sign-change bisection for the y1 roots of F1, then sign tracking of F2
//! along each root branch, with every reported pair re-validated against
//! both polynomials. Fully independent of the solver's elimination path.

use pwcycle_core::poly::BivariatePolynomial;
use pwcycle_core::rat::rat_to_f64;

/// Float compilation of an exact polynomial: per y1-power coefficient
/// polynomials in y2, so one column costs a handful of Horner steps per
/// sample.
pub struct CompiledPoly {
    /// `coeff_polys[k][j]` is the f64 coefficient of `y1^k y2^j`.
    coeff_polys: Vec<Vec<f64>>,
}

impl CompiledPoly {
    pub fn new(f: &BivariatePolynomial) -> Self {
        let deg_x = f.terms().map(|(&(i, _), _)| i as usize).max().unwrap_or(0);
        let deg_y = f.terms().map(|(&(_, j), _)| j as usize).max().unwrap_or(0);
        let mut coeff_polys = vec![vec![0.0; deg_y + 1]; deg_x + 1];
        for (&(i, j), c) in f.terms() {
            coeff_polys[i as usize][j as usize] = rat_to_f64(c);
        }
        Self { coeff_polys }
    }

    /// Dense y1-coefficients of the univariate slice at this y2.
    fn column(&self, y2: f64) -> Vec<f64> {
        self.coeff_polys.iter().map(|cp| horner(cp, y2)).collect()
    }

    pub fn eval(&self, y1: f64, y2: f64) -> f64 {
        horner(&self.column(y2), y1)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// All real roots of the dense univariate `coeffs` inside `[-bound, bound]`,
/// by sign scanning plus bisection. Sorted ascending.
fn column_roots_dense(coeffs: &[f64], bound: f64, samples: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = 2.0 * bound / samples as f64;
    let mut prev_x = -bound;
    let mut prev_v = horner(coeffs, prev_x);
    for i in 1..=samples {
        let x = -bound + i as f64 * step;
        let v = horner(coeffs, x);
        if prev_v == 0.0 {
            roots.push(prev_x);
        } else if prev_v * v < 0.0 {
            let (mut lo, mut hi, mut flo) = (prev_x, x, prev_v);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = horner(coeffs, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm > 0.0) == (flo > 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_v = v;
    }
    roots
}

fn column_roots(f: &CompiledPoly, y2: f64, bound: f64, samples: usize) -> Vec<f64> {
    column_roots_dense(&f.column(y2), bound, samples)
}

/// Greedy proximity matching of the two sorted root lists; branches that
/// jump further than `cutoff` (asymptote crossings) stay unmatched.
fn match_roots(a: &[f64], b: &[f64], cutoff: f64) -> Vec<(f64, f64)> {
    let mut pairs = Vec::new();
    let mut used = vec![false; b.len()];
    for &ra in a {
        let mut best: Option<(usize, f64)> = None;
        for (j, &rb) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (ra - rb).abs();
            if d <= cutoff && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, _)) = best {
            used[j] = true;
            pairs.push((ra, b[j]));
        }
    }
    pairs
}

struct Scan<'a> {
    f1: &'a CompiledPoly,
    f2: &'a CompiledPoly,
    bound: f64,
    samples: usize,
    cutoff: f64,
    found: Vec<(f64, f64)>,
}

impl Scan<'_> {
    /// Hunts for sign changes of `f2` along every matched branch between
    /// two columns, subdividing when root counts disagree.
    fn process_gap(&mut self, y2a: f64, roots_a: &[f64], y2b: f64, roots_b: &[f64], depth: usize) {
        if roots_a.len() != roots_b.len() && depth > 0 && (y2b - y2a) > 1e-9 {
            let mid = 0.5 * (y2a + y2b);
            let roots_mid = column_roots(self.f1, mid, self.bound, self.samples);
            self.process_gap(y2a, roots_a, mid, &roots_mid, depth - 1);
            self.process_gap(mid, &roots_mid, y2b, roots_b, depth - 1);
            return;
        }
        for (ra, rb) in match_roots(roots_a, roots_b, self.cutoff) {
            let ga = self.f2.eval(ra, y2a);
            let gb = self.f2.eval(rb, y2b);
            if ga == 0.0 {
                self.found.push((ra, y2a));
            } else if ga * gb < 0.0 {
                if let Some(pair) = self.refine(y2a, ra, ga, y2b, rb) {
                    self.found.push(pair);
                }
            }
        }
    }

    /// Bisection on y2 along one branch of `f1 = 0` for the zero of `f2`.
    fn refine(
        &self,
        mut y2_lo: f64,
        mut root_lo: f64,
        mut g_lo: f64,
        mut y2_hi: f64,
        mut root_hi: f64,
    ) -> Option<(f64, f64)> {
        for _ in 0..100 {
            if (y2_hi - y2_lo).abs() < 1e-12 && (root_hi - root_lo).abs() < 1e-9 {
                break;
            }
            let mid = 0.5 * (y2_lo + y2_hi);
            let guess = 0.5 * (root_lo + root_hi);
            let roots = column_roots(self.f1, mid, self.bound, self.samples);
            let near = roots
                .iter()
                .copied()
                .min_by(|a, b| (a - guess).abs().partial_cmp(&(b - guess).abs()).unwrap())?;
            if (near - guess).abs() > self.cutoff {
                return None; // lost the branch
            }
            let g_mid = self.f2.eval(near, mid);
            if g_mid == 0.0 || (g_mid > 0.0) == (g_lo > 0.0) {
                y2_lo = mid;
                root_lo = near;
                g_lo = g_mid;
            } else {
                y2_hi = mid;
                root_hi = near;
            }
        }
        if (root_hi - root_lo).abs() > 1e-6 * (1.0 + root_lo.abs()) {
            return None;
        }
        Some((0.5 * (root_lo + root_hi), 0.5 * (y2_lo + y2_hi)))
    }
}

fn residual_ok(f: &BivariatePolynomial, y1: f64, y2: f64) -> bool {
    let scale = f.eval_abs_f64(y1, y2).max(1.0);
    f.eval_f64(y1, y2).abs() <= 1e-6 * scale
}

/// All common zeros of `(f1, f2)` with `y1 < y2` inside the square
/// `[-bound, bound]^2`, found without any resultant machinery. Every
/// reported pair is validated against both polynomials.
pub fn common_zeros(
    f1: &BivariatePolynomial,
    f2: &BivariatePolynomial,
    bound: f64,
    cols: usize,
    samples: usize,
) -> Vec<(f64, f64)> {
    let c1 = CompiledPoly::new(f1);
    let c2 = CompiledPoly::new(f2);
    let mut scan = Scan {
        f1: &c1,
        f2: &c2,
        bound,
        samples,
        cutoff: 0.02 * bound + 0.5,
        found: Vec::new(),
    };
    let col_step = 2.0 * bound / cols as f64;
    let mut prev_y2 = -bound;
    let mut prev_roots = column_roots(&c1, prev_y2, bound, samples);
    for i in 1..=cols {
        let y2 = -bound + i as f64 * col_step;
        let roots = column_roots(&c1, y2, bound, samples);
        scan.process_gap(prev_y2, &prev_roots, y2, &roots, 10);
        prev_y2 = y2;
        prev_roots = roots;
    }
    // Validate, keep ordered pairs, merge duplicates.
    let mut ordered: Vec<(f64, f64)> = scan
        .found
        .into_iter()
        .filter(|&(y1, y2)| y1 < y2 - 1e-8)
        .filter(|&(y1, y2)| residual_ok(f1, y1, y2) && residual_ok(f2, y1, y2))
        .collect();
    ordered.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for pair in ordered {
        let duplicate = merged
            .iter()
            .any(|&(a, b)| (a - pair.0).abs() < 1e-6 && (b - pair.1).abs() < 1e-6);
        if !duplicate {
            merged.push(pair);
        }
    }
    merged
}
