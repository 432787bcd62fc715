//! Checks JSON documents against the published schemas. Supports the subset
//! of JSON Schema those files use: `type`, `const`, `enum`, `required`,
//! `properties`, `additionalProperties: false`, `items`, `minItems`,
//! `maxItems`, `minimum` and `oneOf`.

use std::path::PathBuf;

use serde_json::Value;

pub fn load(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

/// All violations, each prefixed by a JSON pointer.
pub fn violations(schema: &Value, doc: &Value) -> Vec<String> {
    let mut out = Vec::new();
    check(schema, doc, "", &mut out);
    out
}

fn type_matches(ty: &str, v: &Value) -> bool {
    match ty {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(schema: &Value, doc: &Value, at: &str, out: &mut Vec<String>) {
    let s = schema.as_object().expect("schema nodes are objects");
    for key in s.keys() {
        assert!(
            matches!(
                key.as_str(),
                "$schema"
                    | "$id"
                    | "title"
                    | "description"
                    | "type"
                    | "const"
                    | "enum"
                    | "required"
                    | "properties"
                    | "additionalProperties"
                    | "items"
                    | "minItems"
                    | "maxItems"
                    | "minimum"
                    | "oneOf"
            ),
            "unsupported keyword {key}"
        );
    }
    if let Some(ty) = s.get("type").and_then(Value::as_str) {
        if !type_matches(ty, doc) {
            out.push(format!("{at}: expected {ty}"));
            return;
        }
    }
    if let Some(c) = s.get("const") {
        if c != doc {
            out.push(format!("{at}: expected {c}"));
        }
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(doc) {
            out.push(format!("{at}: {doc} not in {options:?}"));
        }
    }
    if let Some(min) = s.get("minimum").and_then(Value::as_i64) {
        if doc.as_i64().is_some_and(|v| v < min) {
            out.push(format!("{at}: below minimum {min}"));
        }
    }
    if let Some(branches) = s.get("oneOf").and_then(Value::as_array) {
        let matching = branches
            .iter()
            .filter(|b| violations(b, doc).is_empty())
            .count();
        if matching != 1 {
            out.push(format!("{at}: matches {matching} oneOf branches"));
        }
    }
    if let Some(obj) = doc.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        for r in s
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let r = r.as_str().unwrap();
            if !obj.contains_key(r) {
                out.push(format!("{at}: missing {r}"));
            }
        }
        for (k, v) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => check(sub, v, &format!("{at}/{k}"), out),
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    out.push(format!("{at}: unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let Some(arr) = doc.as_array() {
        if let Some(min) = s.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                out.push(format!("{at}: fewer than {min} items"));
            }
        }
        if let Some(max) = s.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                out.push(format!("{at}: more than {max} items"));
            }
        }
        if let Some(items) = s.get("items") {
            for (i, v) in arr.iter().enumerate() {
                check(items, v, &format!("{at}/{i}"), out);
            }
        }
    }
}
