use serde::Serialize;
use serde_json::{Number, Value};

/// Decimal places kept for every float in JSON output.
pub const DECIMALS: i32 = 9;

pub fn round(x: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds every float in the tree so output is stable across runs.
fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

pub fn to_json(value: &impl Serialize) -> String {
    let tree = serde_json::to_value(value).expect("report types serialize");
    let mut text = serde_json::to_string_pretty(&normalize(tree)).expect("values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_normalizes_negative_zero() {
        assert_eq!(round(-1e-12).to_bits(), 0.0f64.to_bits());
        assert_eq!(round(1.0000000004), 1.0);
        assert_eq!(to_json(&serde_json::json!({"x": -0.0, "y": [2.1234567891]})), "{\n  \"x\": 0.0,\n  \"y\": [\n    2.123456789\n  ]\n}\n");
    }
}
