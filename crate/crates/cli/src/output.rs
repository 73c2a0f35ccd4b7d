//! Text and JSON rendering shared by every verb.

use serde::Serialize;
use serde_json::Value;

/// `%.12g`: twelve significant digits, trailing zeros dropped.
pub fn fmt_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mant), exp.abs());
    }
    let decimals = (11 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Integral floats print as integers and `-0` as `0`; everything else keeps
/// serde_json's shortest round-trip form.
fn tidy(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() && x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 => {
                Value::from(x as i64)
            }
            _ => Value::Number(n),
        },
        Value::Array(xs) => Value::Array(xs.into_iter().map(tidy).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, tidy(v))).collect()),
        other => other,
    }
}

pub fn to_json<T: Serialize>(x: &T, pretty: bool) -> String {
    let v = tidy(serde_json::to_value(x).expect("output types serialize"));
    if pretty {
        serde_json::to_string_pretty(&v).expect("values serialize")
    } else {
        v.to_string()
    }
}
