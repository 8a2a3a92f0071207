//! Versioned report envelope, numeric rounding and text rendering.

use std::fmt::Write;

use framekit::linalg::Vector;
use serde_json::{json, Map, Value};

use crate::{CliError, Format};

pub const REPORT_FORMAT: &str = "framekit-report-v1";
/// Significant digits kept for every float in a report.
pub const DIGITS: usize = 12;

/// Rounds to [`DIGITS`] significant digits. Non-finite values become `null`.
pub fn round_sig(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{:.*e}", DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    // Avoid `-0` so that equal reports compare equal byte for byte.
    json!(if r == 0.0 { 0.0 } else { r })
}

/// Applies [`round_sig`] to every float in a value. Integers are untouched.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round_sig(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

/// Complex vector as a list of `[re, im]` pairs.
pub fn vector_json(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(|z| json!([z.re, z.im])).collect())
}

pub fn envelope(command: &str, seed: u64, result: Result<Value, CliError>) -> Value {
    let mut out = Map::new();
    out.insert("format".into(), json!(REPORT_FORMAT));
    out.insert("command".into(), json!(command));
    out.insert("seed".into(), json!(seed));
    match result {
        Ok(v) => {
            out.insert("status".into(), json!("ok"));
            out.insert("result".into(), round_value(v));
        }
        Err(e) => {
            out.insert("status".into(), json!("error"));
            out.insert(
                "error".into(),
                json!({ "name": e.name(), "message": e.message() }),
            );
        }
    }
    Value::Object(out)
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text_into(&mut s, v, 0);
            s
        }
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| match i {
            Value::Array(inner) => inner.iter().all(|x| !x.is_array() && !x.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(_) => "{}".to_string(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn text_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if is_leaf(item) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar_text(item));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    text_into(out, item, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if is_leaf(item) {
                    let _ = writeln!(out, "{pad}- {}", scalar_text(item));
                } else {
                    let _ = writeln!(out, "{pad}- [{i}]");
                    text_into(out, item, depth + 1);
                }
            }
        }
        leaf => {
            let _ = writeln!(out, "{pad}{}", scalar_text(leaf));
        }
    }
}
