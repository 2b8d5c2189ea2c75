//! JSON forms of results, curves and catalogs. Every numeric payload carries
//! its exact string form; decimal fields are rounded renderings of it.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::catalog::{influence, ExceptionalCurve};
use crate::divisor::DivisorClass;
use crate::exactnum::{ExactValue, Rational};
use crate::seshadri::{SeshadriResult, SeshadriValue};
use crate::surface::SurfaceModel;
use crate::transform::InfluenceInterval;

/// Default number of decimals in approximate renderings.
pub const DEFAULT_DECIMALS: usize = 6;

/// A JSON number written with exactly the digits given.
pub fn decimal(s: &str) -> Value {
    Value::Number(Number::from_str(s).expect("decimal rendering is a valid JSON number"))
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn rational(r: &Rational) -> Value {
    if r.is_integer() {
        decimal(&r.to_integer().to_string())
    } else {
        Value::String(r.to_string())
    }
}

pub fn class(c: &DivisorClass) -> Value {
    Value::Array(vec![rational(&c.a), rational(&c.b)])
}

pub fn curve(c: &ExceptionalCurve) -> Value {
    json!({ "name": c.name.to_string(), "class": class(&c.cls), "mult": c.mult })
}

pub fn interval(i: &InfluenceInterval) -> Value {
    json!({
        "lower": i.lower.to_string(),
        "upper": i.upper.to_string(),
        "lower_open": i.lower_open,
        "upper_open": i.upper_open,
    })
}

pub fn value_pair(v: &SeshadriValue, digits: usize) -> (Value, Value) {
    match v {
        SeshadriValue::Exact(r) => {
            (Value::String(r.to_string()), decimal(&ExactValue::Rat(r.clone()).approx(digits)))
        }
        SeshadriValue::Interval { lower, upper } => (
            json!({ "lower": lower.to_string(), "upper": upper.to_string() }),
            json!({
                "lower": decimal(&ExactValue::Rat(lower.clone()).approx(digits)),
                "upper": decimal(&upper.approx(digits)),
            }),
        ),
    }
}

/// `{"epsilon", "approx", "witness", "regime"}` in that order.
pub fn result(r: &SeshadriResult, digits: usize) -> Value {
    let (eps, approx) = value_pair(&r.value, digits);
    let mut m = Map::new();
    m.insert("epsilon".into(), eps);
    m.insert("approx".into(), approx);
    m.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, curve));
    m.insert("regime".into(), Value::String(r.regime.clone()));
    Value::Object(m)
}

/// A catalog entry with its influence area, `null` when unknown.
pub fn catalog_entry(c: &ExceptionalCurve, s: &SurfaceModel) -> Value {
    let mut v = curve(c);
    let infl = influence(c, s).map_or(Value::Null, |i| interval(&i));
    v.as_object_mut().expect("object").insert("influence".into(), infl);
    v
}
