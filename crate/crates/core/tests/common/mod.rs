#![allow(dead_code)]

//! Shared test support: a validator for the JSON-Schema subset used by the
//! shipped schema files, and a brute-force closing-system oracle.

use serde_json::Value;

pub mod oracle;

/// Validates `value` against the draft-07 subset used by the in-repo
/// schemas: type/const/enum/required/properties/additionalProperties/
/// items/minItems/maxItems/oneOf/$ref/minimum/exclusiveMinimum/pattern.
pub fn validate_schema(root: &Value, schema: &Value, value: &Value, path: &str) -> Vec<String> {
    let mut errors = Vec::new();
    validate_inner(root, schema, value, path, &mut errors);
    errors
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let mut node = root;
    for part in reference.trim_start_matches("#/").split('/') {
        node = node.get(part).unwrap_or(&Value::Null);
    }
    node
}

fn type_matches(ty: &str, value: &Value) -> bool {
    match ty {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "number" => value.is_number(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn validate_inner(
    root: &Value,
    schema: &Value,
    value: &Value,
    path: &str,
    errors: &mut Vec<String>,
) {
    let Some(obj) = schema.as_object() else {
        return;
    };
    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        validate_inner(root, resolve(root, reference), value, path, errors);
        return;
    }
    if let Some(one_of) = obj.get("oneOf").and_then(Value::as_array) {
        let matching = one_of
            .iter()
            .filter(|branch| validate_schema(root, branch, value, path).is_empty())
            .count();
        if matching != 1 {
            errors.push(format!(
                "{path}: matched {matching} oneOf branches, expected 1"
            ));
        }
        return;
    }
    if let Some(expected) = obj.get("const") {
        if value != expected {
            errors.push(format!("{path}: expected const {expected}"));
        }
        return;
    }
    if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum"));
        }
        return;
    }
    if let Some(ty) = obj.get("type").and_then(Value::as_str) {
        if !type_matches(ty, value) {
            errors.push(format!("{path}: expected type {ty}, got {value}"));
            return;
        }
    }
    if let Some(minimum) = obj.get("minimum").and_then(Value::as_f64) {
        if let Some(v) = value.as_f64() {
            if v < minimum {
                errors.push(format!("{path}: {v} below minimum {minimum}"));
            }
        }
    }
    if let Some(minimum) = obj.get("exclusiveMinimum").and_then(Value::as_f64) {
        if let Some(v) = value.as_f64() {
            if v <= minimum {
                errors.push(format!("{path}: {v} not above {minimum}"));
            }
        }
    }
    if let Some(pattern) = obj.get("pattern").and_then(Value::as_str) {
        if let Some(s) = value.as_str() {
            let re = regex::Regex::new(pattern).expect("valid schema pattern");
            if !re.is_match(s) {
                errors.push(format!("{path}: {s:?} does not match {pattern:?}"));
            }
        }
    }
    if let Some(map) = value.as_object() {
        let props = obj.get("properties").and_then(Value::as_object);
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    errors.push(format!("{path}: missing required field {key:?}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, subschema) in props {
                if let Some(subvalue) = map.get(key) {
                    validate_inner(root, subschema, subvalue, &format!("{path}.{key}"), errors);
                }
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                let known = props.map(|p| p.contains_key(key)).unwrap_or(false);
                if !known {
                    errors.push(format!("{path}: unexpected field {key:?}"));
                }
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min_items) = obj.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min_items {
                errors.push(format!("{path}: fewer than {min_items} items"));
            }
        }
        if let Some(max_items) = obj.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max_items {
                errors.push(format!("{path}: more than {max_items} items"));
            }
        }
        if let Some(items) = obj.get("items") {
            for (i, item) in arr.iter().enumerate() {
                validate_inner(root, items, item, &format!("{path}[{i}]"), errors);
            }
        }
    }
}

pub fn assert_valid(schema_text: &str, value: &Value) {
    let schema: Value = serde_json::from_str(schema_text).expect("schema parses");
    let errors = validate_schema(&schema, &schema, value, "$");
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}
