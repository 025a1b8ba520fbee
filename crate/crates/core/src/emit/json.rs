use serde_json::Value;

use super::EmitError;
use crate::analyzer::Report;

/// Rounds to 6 decimals; values too large to carry 6 decimals pass through.
pub fn round6(x: f64) -> f64 {
    if !x.is_finite() || x.abs() >= 1e9 {
        return x;
    }
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round6).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Pretty-printed report with fields in declaration order and floats
/// rounded to 6 decimals. Unbounded feeds are `null`.
pub fn emit_json(report: &Report) -> Vec<u8> {
    let mut value = serde_json::to_value(report).expect("report fields are always serializable");
    round_numbers(&mut value);
    let mut out = serde_json::to_vec_pretty(&value).expect("a JSON value always serializes");
    out.push(b'\n');
    out
}

pub fn parse_json(bytes: &[u8]) -> Result<Report, EmitError> {
    Ok(serde_json::from_slice(bytes)?)
}
