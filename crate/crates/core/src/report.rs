//! JSON encoding for command reports: rationals as `"p/q"` strings and
//! floats rounded to 12 significant digits.

use serde_json::{json, Value};

use crate::affine::AffineWeight;
use crate::dirac::IsotypicComponent;
use crate::rational::{self, Q};
use crate::rootsys::Weight;

/// Rounds to 12 significant digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    json!(r)
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float(x)).collect())
}

pub fn rat(x: &Q) -> Value {
    Value::String(rational::to_string(x))
}

pub fn weight(w: &Weight) -> Value {
    Value::Array(w.coords.iter().map(rat).collect())
}

pub fn weights<'a>(ws: impl IntoIterator<Item = &'a Weight>) -> Value {
    Value::Array(ws.into_iter().map(weight).collect())
}

pub fn affine_weight(a: &AffineWeight) -> Value {
    json!({"m": rat(&a.m), "lam": weight(&a.lam), "k": rat(&a.k)})
}

/// Multiset entry `{"n", "mu", "mult"}`.
pub fn multiset_entry(n: i64, mu: &Weight, mult: i64) -> Value {
    json!({"n": n, "mu": weight(mu), "mult": mult})
}

pub fn component(c: &IsotypicComponent) -> Value {
    json!({
        "n": c.n,
        "nu": weight(&c.nu),
        "m_even": c.m_even,
        "m_odd": c.m_odd,
        "d2": rat(&c.d2),
    })
}

/// Renders a JSON value on one line per top-level field, for terminal output.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                    out.push_str(&format!("{k}:\n"));
                    for it in items {
                        out.push_str(&format!("  {}\n", inline(it)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", inline(x))),
            }
        }
    } else {
        out.push_str(&inline(v));
        out.push('\n');
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}={}", inline(x)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
