//! Stable float formatting for reports: values are rounded to six
//! significant digits, then written in shortest round-trip form.

use serde_json::Value;

pub const SIGNIFICANT_DIGITS: usize = 6;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree. Integers are left alone.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Human-readable form of a rounded float; scientific notation outside
/// [1e-3, 1e7).
pub fn display(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if a != 0.0 && !(1e-3..1e7).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(round_sig(1.266831), 1.26683);
        assert_eq!(round_sig(5.810970e-5), 5.81097e-5);
        assert_eq!(round_sig(1013.5998), 1013.6);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(display(2047.5), "2047.5");
        assert_eq!(display(5.810970e-5), "5.81097e-5");
        assert_eq!(display(-2.5e9), "-2.5e9");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [std::f64::consts::PI, 1e-300, -7.77777777e12, 0.1 + 0.2] {
            assert_eq!(round_sig(round_sig(x)), round_sig(x));
        }
    }
}
