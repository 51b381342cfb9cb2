//! JSON rendering with stable number formatting.
//!
//! Numbers are written with 17 significant digits so that every `f64`
//! round-trips, and the text is kept verbatim on parsing, which makes
//! parse-then-serialize byte-identical.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::index::Index;
use crate::opideal::{DualityReport, InequalityCheck};
use crate::optimize::{NormCert, OptConfig, Witness};

/// `%.17g`-style rendering; non-finite values become strings.
pub fn format_g17(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { "-" } else { "+" },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A JSON number (or string for non-finite values).
pub fn num(x: f64) -> Value {
    let s = format_g17(x);
    match Number::from_str(&s) {
        Ok(n) if x.is_finite() => Value::Number(n),
        _ => Value::String(s),
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| num(*x)).collect())
}

pub fn matrix(rows: &[Vec<f64>]) -> Value {
    Value::Array(rows.iter().map(|r| nums(r)).collect())
}

pub fn index(p: Index) -> Value {
    Value::String(p.to_string())
}

/// Reads a number written by [`num`], including the non-finite strings.
pub fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "inf" => Some(f64::INFINITY),
            "-inf" => Some(f64::NEG_INFINITY),
            "nan" => Some(f64::NAN),
            _ => None,
        },
        _ => None,
    }
}

pub fn object<I, K>(entries: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(
        entries
            .into_iter()
            .map(|(k, v)| (k.into(), v))
            .collect::<Map<_, _>>(),
    )
}

pub fn number_map(m: &BTreeMap<String, f64>) -> Value {
    object(m.iter().map(|(k, v)| (k.clone(), num(*v))))
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::None => Value::Null,
        Witness::Vector(v) => nums(v),
        Witness::Sequence(s) => matrix(s),
    }
}

pub fn cert(c: &NormCert, with_witness: bool) -> Value {
    let mut entries = vec![
        ("value", num(c.value)),
        ("method", Value::String(c.method.as_str().into())),
        ("bound", Value::String(c.bound.as_str().into())),
    ];
    if let Some(u) = c.upper {
        entries.push(("upper", num(u)));
    }
    if !c.notes.is_empty() {
        entries.push(("notes", number_map(&c.notes)));
    }
    if with_witness {
        entries.push(("witness", witness(&c.witness)));
    }
    object(entries)
}

pub fn config(cfg: &OptConfig) -> Value {
    let mut entries = vec![
        ("seed", Value::from(cfg.seed)),
        ("restarts", Value::from(cfg.restarts)),
        ("max_iter", Value::from(cfg.max_iter)),
        ("tol", num(cfg.tol)),
        ("grid", Value::from(cfg.grid_resolution)),
        ("method", Value::String(cfg.method.to_string())),
        ("mid_max_m", Value::from(cfg.mid_max_m)),
    ];
    if let Some(n) = cfg.rad_mc {
        entries.push(("rad_mc", Value::from(n)));
    }
    object(entries)
}

pub fn inequality(c: &InequalityCheck) -> Value {
    object([
        ("label", Value::String(c.label.clone())),
        ("lhs", num(c.lhs)),
        ("rhs", num(c.rhs)),
        ("margin", num(c.margin)),
        ("tol", num(c.tol)),
        ("pass", Value::Bool(c.pass)),
    ])
}

pub fn duality_report(r: &DualityReport, with_witness: bool) -> Value {
    object([
        ("x", Value::String(r.x.to_string())),
        ("y", Value::String(r.y.to_string())),
        ("k", Value::from(r.k)),
        (r.left.0.as_str(), cert(&r.left.1, with_witness)),
        (r.right.0.as_str(), cert(&r.right.1, with_witness)),
        (
            "hypotheses",
            Value::Array(
                r.hypotheses
                    .iter()
                    .map(|h| Value::String(h.clone()))
                    .collect(),
            ),
        ),
        (
            "checks",
            Value::Array(r.checks.iter().map(inequality).collect()),
        ),
        ("pass", Value::Bool(r.pass())),
    ])
}

/// Pretty JSON text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_g17(2f64.sqrt()), "1.4142135623730951");
        assert_eq!(format_g17(5.0), "5");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(f64::INFINITY), "inf");
    }

    #[test]
    fn values_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, -7.25e12, 123456789.0] {
            let s = format_g17(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn text_round_trip_is_byte_identical() {
        let v = object([
            ("b", num(0.1)),
            ("a", nums(&[1.0, f64::INFINITY, 1e-9])),
            ("p", index(Index::ratio(4, 3).unwrap())),
        ]);
        let text = render(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render(&back), text);
        assert_eq!(as_f64(&back["a"][1]), Some(f64::INFINITY));
    }
}
