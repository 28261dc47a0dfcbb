//! Scenario files: the JSON surface describing a piecewise system, with
//! schema validation (field-path errors) and invariant checking.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::builtin::{builtin_system, BuiltinCase};
use crate::centers::{AffineMap, CenterSpec, Family, LinearParams, TimeSign};
use crate::closing::PiecewiseSystem;
use crate::rat::{rat_from_f64, rat_from_str, rat_to_string, Rat};

pub const SCENARIO_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    /// Structural problem in the JSON document.
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    /// Well-formed document violating a domain invariant.
    #[error("invariant violated: {message}")]
    Invariant { message: String },
}

fn schema_err(path: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// One half-system description as it appears in scenario JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecDesc {
    pub family: String,
    /// `[A, B, C, D, omega]`, required exactly when `family == "Lc"`.
    pub params: Option<[Rat; 5]>,
    /// `[a, b, c, alpha, beta, gamma]`.
    pub affine: [Rat; 6],
    pub time_sign: i64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioOptions {
    pub tol_algebraic: Option<f64>,
    pub tol_closure: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub right: SpecDesc,
    pub left: SpecDesc,
    pub options: ScenarioOptions,
}

impl SpecDesc {
    pub fn from_center_spec(spec: &CenterSpec) -> Self {
        let (family, params) = match spec.family() {
            Family::Lc(p) => (
                "Lc".to_string(),
                Some([
                    p.a.clone(),
                    p.b.clone(),
                    p.c.clone(),
                    p.d.clone(),
                    p.omega.clone(),
                ]),
            ),
            Family::S1 => ("S1".to_string(), None),
            Family::S2 => ("S2".to_string(), None),
            Family::S3 => ("S3".to_string(), None),
            Family::S4 => ("S4".to_string(), None),
        };
        let m = spec.map();
        Self {
            family,
            params,
            affine: [
                m.a.clone(),
                m.b.clone(),
                m.c.clone(),
                m.alpha.clone(),
                m.beta.clone(),
                m.gamma.clone(),
            ],
            time_sign: spec.time_sign().to_i64(),
        }
    }

    pub fn to_center_spec(&self, side_label: &str) -> Result<CenterSpec, ScenarioError> {
        let family = match (self.family.as_str(), &self.params) {
            ("Lc", Some(p)) => Family::Lc(LinearParams {
                a: p[0].clone(),
                b: p[1].clone(),
                c: p[2].clone(),
                d: p[3].clone(),
                omega: p[4].clone(),
            }),
            ("Lc", None) => {
                return Err(ScenarioError::Invariant {
                    message: format!("{side_label}: family Lc requires params [A,B,C,D,omega]"),
                })
            }
            ("S1", _) => Family::S1,
            ("S2", _) => Family::S2,
            ("S3", _) => Family::S3,
            ("S4", _) => Family::S4,
            (other, _) => {
                return Err(ScenarioError::Invariant {
                    message: format!("{side_label}: unknown family {other:?}"),
                })
            }
        };
        let a = self.affine.clone();
        let map = AffineMap::new(
            a[0].clone(),
            a[1].clone(),
            a[2].clone(),
            a[3].clone(),
            a[4].clone(),
            a[5].clone(),
        )
        .map_err(|e| ScenarioError::Invariant {
            message: format!("{side_label}: {e} (affine map {:?})", self.affine_strings()),
        })?;
        let time_sign =
            TimeSign::from_i64(self.time_sign).ok_or_else(|| ScenarioError::Invariant {
                message: format!("{side_label}: time_sign must be 1 or -1"),
            })?;
        CenterSpec::new(family, map, time_sign).map_err(|e| ScenarioError::Invariant {
            message: format!("{side_label}: {e}"),
        })
    }

    fn affine_strings(&self) -> Vec<String> {
        self.affine.iter().map(rat_to_string).collect()
    }
}

impl Scenario {
    pub fn to_system(&self) -> Result<PiecewiseSystem, ScenarioError> {
        Ok(PiecewiseSystem {
            right: self.right.to_center_spec("right")?,
            left: self.left.to_center_spec("left")?,
        })
    }

    pub fn parse_str(text: &str) -> Result<Self, ScenarioError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| schema_err("$", format!("invalid JSON: {e}")))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, ScenarioError> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema_err("$", "expected a JSON object"))?;
        let version = obj
            .get("version")
            .ok_or_else(|| schema_err("version", "missing required field"))?
            .as_u64()
            .ok_or_else(|| schema_err("version", "expected an integer"))?;
        if version != SCENARIO_VERSION {
            return Err(schema_err(
                "version",
                format!("unsupported version {version}, expected {SCENARIO_VERSION}"),
            ));
        }
        let name = match obj.get("name") {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(schema_err("name", "expected a string")),
        };
        let right = parse_spec_desc(
            obj.get("right")
                .ok_or_else(|| schema_err("right", "missing required field"))?,
            "right",
        )?;
        let left = parse_spec_desc(
            obj.get("left")
                .ok_or_else(|| schema_err("left", "missing required field"))?,
            "left",
        )?;
        let options = match obj.get("options") {
            None | Some(Value::Null) => ScenarioOptions::default(),
            Some(v) => parse_options(v)?,
        };
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "version" | "name" | "right" | "left" | "options"
            ) {
                return Err(schema_err(key, "unknown field"));
            }
        }
        Ok(Self {
            name,
            right,
            left,
            options,
        })
    }
}

/// Accepts an integer, a float (rationalized exactly), or a `"p/q"` string.
fn parse_rational(value: &Value, path: &str) -> Result<Rat, ScenarioError> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else if let Some(f) = n.as_f64() {
                rat_from_f64(f).ok_or_else(|| schema_err(path, "non-finite number"))
            } else {
                Err(schema_err(path, "unsupported number"))
            }
        }
        Value::String(s) => {
            rat_from_str(s).ok_or_else(|| schema_err(path, format!("not a rational: {s:?}")))
        }
        _ => Err(schema_err(path, "expected a number or \"p/q\" string")),
    }
}

fn parse_rational_array<const N: usize>(
    value: &Value,
    path: &str,
) -> Result<[Rat; N], ScenarioError> {
    let arr = value
        .as_array()
        .ok_or_else(|| schema_err(path, format!("expected an array of {N} rationals")))?;
    if arr.len() != N {
        return Err(schema_err(
            path,
            format!("expected {N} entries, got {}", arr.len()),
        ));
    }
    let mut out: Vec<Rat> = Vec::with_capacity(N);
    for (i, v) in arr.iter().enumerate() {
        out.push(parse_rational(v, &format!("{path}[{i}]"))?);
    }
    Ok(out.try_into().expect("length checked"))
}

fn parse_spec_desc(value: &Value, path: &str) -> Result<SpecDesc, ScenarioError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema_err(path, "expected an object"))?;
    let family = obj
        .get("family")
        .ok_or_else(|| schema_err(&format!("{path}.family"), "missing required field"))?
        .as_str()
        .ok_or_else(|| schema_err(&format!("{path}.family"), "expected a string"))?
        .to_string();
    let params = match obj.get("params") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_rational_array::<5>(v, &format!("{path}.params"))?),
    };
    let affine = match obj.get("affine") {
        None | Some(Value::Null) => {
            let identity = AffineMap::identity();
            [
                identity.a,
                identity.b,
                identity.c,
                identity.alpha,
                identity.beta,
                identity.gamma,
            ]
        }
        Some(v) => parse_rational_array::<6>(v, &format!("{path}.affine"))?,
    };
    let time_sign = match obj.get("time_sign") {
        None | Some(Value::Null) => 1,
        Some(v) => v
            .as_i64()
            .ok_or_else(|| schema_err(&format!("{path}.time_sign"), "expected 1 or -1"))?,
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "family" | "params" | "affine" | "time_sign") {
            return Err(schema_err(&format!("{path}.{key}"), "unknown field"));
        }
    }
    Ok(SpecDesc {
        family,
        params,
        affine,
        time_sign,
    })
}

fn parse_options(value: &Value) -> Result<ScenarioOptions, ScenarioError> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema_err("options", "expected an object"))?;
    let get_tol = |key: &str| -> Result<Option<f64>, ScenarioError> {
        match obj.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let f = v
                    .as_f64()
                    .ok_or_else(|| schema_err(&format!("options.{key}"), "expected a number"))?;
                if !(f.is_finite() && f > 0.0) {
                    return Err(schema_err(
                        &format!("options.{key}"),
                        "must be a positive finite number",
                    ));
                }
                Ok(Some(f))
            }
        }
    };
    let options = ScenarioOptions {
        tol_algebraic: get_tol("tol_algebraic")?,
        tol_closure: get_tol("tol_closure")?,
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "tol_algebraic" | "tol_closure") {
            return Err(schema_err(&format!("options.{key}"), "unknown field"));
        }
    }
    Ok(options)
}

fn rational_to_value(r: &Rat) -> Value {
    use num_traits::ToPrimitive;
    if r.denom() == &num_bigint::BigInt::from(1) {
        if let Some(i) = r.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(rat_to_string(r))
}

impl Serialize for SpecDesc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("family", &self.family)?;
        if let Some(params) = &self.params {
            let vals: Vec<Value> = params.iter().map(rational_to_value).collect();
            map.serialize_entry("params", &vals)?;
        }
        let affine: Vec<Value> = self.affine.iter().map(rational_to_value).collect();
        map.serialize_entry("affine", &affine)?;
        map.serialize_entry("time_sign", &self.time_sign)?;
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for Scenario {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        Scenario::from_value(&value).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Scenario {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("version", &SCENARIO_VERSION)?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("right", &self.right)?;
        map.serialize_entry("left", &self.left)?;
        let mut opts = serde_json::Map::new();
        if let Some(t) = self.options.tol_algebraic {
            opts.insert("tol_algebraic".into(), Value::from(t));
        }
        if let Some(t) = self.options.tol_closure {
            opts.insert("tol_closure".into(), Value::from(t));
        }
        map.serialize_entry("options", &Value::Object(opts))?;
        map.end()
    }
}

/// The scenario equivalent of a built-in case.
pub fn builtin_scenario(case: BuiltinCase) -> Scenario {
    let system = builtin_system(case);
    Scenario {
        name: case.id().to_string(),
        right: SpecDesc::from_center_spec(&system.right),
        left: SpecDesc::from_center_spec(&system.left),
        options: ScenarioOptions::default(),
    }
}
