//! Report assembly: the JSON artifact produced by every analysis run.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::builtin::BuiltinCase;
use crate::closing::ClosingSystem;
use crate::scenario::{builtin_scenario, Scenario, ScenarioError};
use crate::verify::{
    find_cycles, CycleCertificate, CycleSearch, CycleStatus, VerifyError, VerifyOptions,
};

pub const REPORT_VERSION: u64 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClosingReport {
    pub f1: String,
    pub f2: String,
    pub degrees: (u32, u32),
    pub d1: String,
    pub d2: String,
    pub symmetric_form: Option<SymmetricReport>,
    pub continuum: bool,
    pub identical_integrals: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub p1: String,
    pub p2: String,
    pub degrees: (u32, u32),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub raw_product: u64,
    pub cycle_bound: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateReport {
    pub y1: f64,
    pub y2: f64,
    pub y1_exact: Option<String>,
    pub y2_exact: Option<String>,
    pub level_right: f64,
    pub level_left: f64,
    pub residuals: (f64, f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingReport {
    pub right: f64,
    pub left: f64,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Index into `candidates`.
    pub candidate: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// Arc endpoint errors (right, left); absent when not integrated.
    pub closure_errors: (Option<f64>, Option<f64>),
    pub crossing_at_y1: CrossingReport,
    pub crossing_at_y2: CrossingReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoleReport {
    pub y1: f64,
    pub y2: f64,
    pub pole: f64,
    pub half: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryReport {
    pub candidates: usize,
    pub verified: usize,
    pub continuum: bool,
    pub cycle_bound: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingsReport {
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: u64,
    pub scenario: Scenario,
    pub closing: ClosingReport,
    pub bound: Option<BoundReport>,
    pub candidates: Vec<CandidateReport>,
    pub certificates: Vec<CertificateReport>,
    pub pole_rejections: Vec<PoleReport>,
    pub summary: SummaryReport,
    pub timings: TimingsReport,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn status_strings(status: &CycleStatus) -> (String, Option<String>) {
    match status {
        CycleStatus::VerifiedCrossingCycle => ("verified_crossing_cycle".into(), None),
        CycleStatus::SpuriousPole => ("spurious_pole".into(), None),
        CycleStatus::SpuriousNonCrossingRegion => ("spurious_non_crossing_region".into(), None),
        CycleStatus::SpuriousOrientation => ("spurious_orientation".into(), None),
        CycleStatus::SpuriousDisconnected => ("spurious_disconnected".into(), None),
        CycleStatus::Unverifiable(reason) => ("unverifiable".into(), Some(reason.clone())),
    }
}

fn verdict_string(v: crate::verify::CrossingVerdict) -> String {
    match v {
        crate::verify::CrossingVerdict::Crossing => "crossing".into(),
        crate::verify::CrossingVerdict::Tangent => "tangent".into(),
        crate::verify::CrossingVerdict::Sliding => "sliding".into(),
    }
}

fn closing_report(cs: &ClosingSystem) -> ClosingReport {
    ClosingReport {
        f1: cs.f1.to_string(),
        f2: cs.f2.to_string(),
        degrees: cs.degrees,
        d1: cs.d1.to_string(),
        d2: cs.d2.to_string(),
        symmetric_form: cs.symmetric_form.as_ref().map(|(p1, p2)| SymmetricReport {
            p1: p1.to_string(),
            p2: p2.to_string(),
            degrees: (p1.degree().unwrap_or(0), p2.degree().unwrap_or(0)),
        }),
        continuum: cs.continuum,
        identical_integrals: cs.identical_integrals,
    }
}

fn certificate_report(index: usize, cert: &CycleCertificate) -> CertificateReport {
    let (status, reason) = status_strings(&cert.status);
    let wrap = |e: f64| if e.is_nan() { None } else { Some(e) };
    CertificateReport {
        candidate: index,
        status,
        reason,
        closure_errors: (wrap(cert.closure_errors.0), wrap(cert.closure_errors.1)),
        crossing_at_y1: CrossingReport {
            right: cert.crossing_signs.0.x_velocity_right,
            left: cert.crossing_signs.0.x_velocity_left,
            verdict: verdict_string(cert.crossing_signs.0.verdict),
        },
        crossing_at_y2: CrossingReport {
            right: cert.crossing_signs.1.x_velocity_right,
            left: cert.crossing_signs.1.x_velocity_left,
            verdict: verdict_string(cert.crossing_signs.1.verdict),
        },
    }
}

/// Effective verification options for a scenario: file-level tolerances
/// override the provided defaults.
pub fn effective_options(scenario: &Scenario, base: &VerifyOptions) -> VerifyOptions {
    let mut opts = *base;
    if let Some(t) = scenario.options.tol_algebraic {
        opts.solve.residual_tol = t;
    }
    if let Some(t) = scenario.options.tol_closure {
        opts.closure_tol = t;
    }
    opts
}

pub fn report_from_search(scenario: &Scenario, search: &CycleSearch, total_ms: f64) -> Report {
    let candidates: Vec<CandidateReport> = search
        .certificates
        .iter()
        .map(|cert| {
            let c = &cert.candidate;
            CandidateReport {
                y1: c.y1.value,
                y2: c.y2.value,
                y1_exact: c.y1.exact.as_ref().map(|e| e.render()),
                y2_exact: c.y2.exact.as_ref().map(|e| e.render()),
                level_right: c.level_right,
                level_left: c.level_left,
                residuals: (c.residual_f1, c.residual_f2),
            }
        })
        .collect();
    let certificates: Vec<CertificateReport> = search
        .certificates
        .iter()
        .enumerate()
        .map(|(i, cert)| certificate_report(i, cert))
        .collect();
    let pole_rejections: Vec<PoleReport> = search
        .pole_rejections
        .iter()
        .map(|p| PoleReport {
            y1: p.y1,
            y2: p.y2,
            pole: p.pole,
            half: p.half.to_string(),
        })
        .collect();
    Report {
        version: REPORT_VERSION,
        scenario: scenario.clone(),
        closing: closing_report(&search.closing),
        bound: search.bound.map(|b| BoundReport {
            raw_product: b.raw_product,
            cycle_bound: b.cycle_bound,
        }),
        summary: SummaryReport {
            candidates: candidates.len(),
            verified: search.verified_count(),
            continuum: search.continuum,
            cycle_bound: search.bound.map(|b| b.cycle_bound),
        },
        candidates,
        certificates,
        pole_rejections,
        timings: TimingsReport { total_ms },
    }
}

/// Runs the full pipeline on a scenario and assembles the report.
pub fn run_scenario(scenario: &Scenario, base_opts: &VerifyOptions) -> Result<Report, RunError> {
    let start = Instant::now();
    let system = scenario.to_system()?;
    let opts = effective_options(scenario, base_opts);
    let search = find_cycles(&system, &opts)?;
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report_from_search(scenario, &search, total_ms))
}

/// Runs one of the stored demonstration cases.
pub fn run_builtin(case: BuiltinCase, base_opts: &VerifyOptions) -> Result<Report, RunError> {
    run_scenario(&builtin_scenario(case), base_opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_report_has_expected_shape() {
        let report = run_builtin(BuiltinCase::Prop1, &VerifyOptions::default()).unwrap();
        assert_eq!(report.summary.verified, 1);
        assert_eq!(report.candidates.len(), 1);
        assert_eq!(
            report.candidates[0].y1_exact.as_deref(),
            Some("(24 - √339)/3")
        );
        assert_eq!(report.certificates[0].status, "verified_crossing_cycle");
        assert_eq!(report.bound.as_ref().unwrap().cycle_bound, 1);
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.candidates[0].y1, report.candidates[0].y1);
    }

    #[test]
    fn scenario_path_matches_builtin_path_modulo_timings() {
        let scenario = builtin_scenario(BuiltinCase::Prop3);
        let text = serde_json::to_string(&scenario).unwrap();
        let parsed = crate::scenario::Scenario::parse_str(&text).unwrap();
        let a = run_builtin(BuiltinCase::Prop3, &VerifyOptions::default()).unwrap();
        let b = run_scenario(&parsed, &VerifyOptions::default()).unwrap();
        let mut va = serde_json::to_value(&a).unwrap();
        let mut vb = serde_json::to_value(&b).unwrap();
        va.as_object_mut().unwrap().remove("timings");
        vb.as_object_mut().unwrap().remove("timings");
        assert_eq!(va, vb);
    }

    #[test]
    fn report_floats_round_trip() {
        let report = run_builtin(BuiltinCase::Prop5, &VerifyOptions::default()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        for (a, b) in report.candidates.iter().zip(&back.candidates) {
            assert_eq!(a.y1.to_bits(), b.y1.to_bits());
            assert_eq!(a.level_left.to_bits(), b.level_left.to_bits());
        }
    }
}
