//! Reports and scenarios must validate against the schema files shipped in
//! `schemas/`.

mod common;

use pwcycle_core::builtin::BuiltinCase;
use pwcycle_core::centers::{AffineMap, CenterSpec, Family, TimeSign};
use pwcycle_core::closing::PiecewiseSystem;
use pwcycle_core::report::{report_from_search, run_builtin};
use pwcycle_core::scenario::{builtin_scenario, Scenario, SpecDesc};
use pwcycle_core::verify::{find_cycles, VerifyOptions};

const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");
const SCENARIO_SCHEMA: &str = include_str!("../schemas/scenario.schema.json");

#[test]
fn builtin_reports_validate() {
    for case in BuiltinCase::ALL {
        let report = run_builtin(case, &VerifyOptions::default()).unwrap();
        let value = serde_json::to_value(&report).unwrap();
        common::assert_valid(REPORT_SCHEMA, &value);
    }
}

#[test]
fn continuum_report_validates() {
    // Identical halves: continuum, no bound-breaking fields.
    let spec = CenterSpec::new(
        Family::S1,
        AffineMap::from_i64([2, 0, 3, 2, -1, 1]),
        TimeSign::Forward,
    )
    .unwrap();
    let pw = PiecewiseSystem {
        right: spec.clone(),
        left: spec.clone(),
    };
    let search = find_cycles(&pw, &VerifyOptions::default()).unwrap();
    let scenario = Scenario {
        name: "twin".into(),
        right: SpecDesc::from_center_spec(&pw.right),
        left: SpecDesc::from_center_spec(&pw.left),
        options: Default::default(),
    };
    let report = report_from_search(&scenario, &search, 0.0);
    assert!(report.summary.continuum);
    let value = serde_json::to_value(&report).unwrap();
    common::assert_valid(REPORT_SCHEMA, &value);
}

#[test]
fn builtin_scenarios_validate() {
    for case in BuiltinCase::ALL {
        let scenario = builtin_scenario(case);
        let value = serde_json::to_value(&scenario).unwrap();
        common::assert_valid(SCENARIO_SCHEMA, &value);
    }
}

#[test]
fn validator_rejects_malformed_documents() {
    let bad = serde_json::json!({
        "version": 1,
        "right": {"family": "S9"},
        "left": {"family": "S2"}
    });
    let schema: serde_json::Value = serde_json::from_str(SCENARIO_SCHEMA).unwrap();
    let errors = common::validate_schema(&schema, &schema, &bad, "$");
    assert!(!errors.is_empty());
}
