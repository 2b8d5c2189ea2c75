//! Rendering of results, scan tables and catalogs as JSON, CSV or plain text.
//! Exact forms are always present; decimals are rounded renderings of them.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use seshadri_core::catalog::{family_tail, influence, is_complete, ExceptionalCurve};
use seshadri_core::exactnum::ExactValue;
use seshadri_core::render;
use seshadri_core::seshadri::ScanRow;
use seshadri_core::{DivisorClass, PointStratum, SeshadriResult, SeshadriValue, SurfaceModel};

/// Fixed column set of every result table.
pub const RESULT_COLUMNS: [&str; 8] =
    ["a", "b", "nef", "epsilon_exact", "epsilon_approx", "sqrtA2_exact", "witness", "regime"];

/// Marker in the regime column of classes outside the nef cone.
pub const NOT_NEF: &str = "not-nef";

fn approx(v: &SeshadriValue, digits: usize) -> String {
    match v {
        SeshadriValue::Exact(r) => ExactValue::Rat(r.clone()).approx(digits),
        SeshadriValue::Interval { lower, upper } => format!(
            "[{}, {}]",
            ExactValue::Rat(lower.clone()).approx(digits),
            upper.approx(digits)
        ),
    }
}

/// `sqrt(r)` with perfect squares written as the rational root.
fn sqrt_form(v: &ExactValue) -> String {
    v.as_rational().map_or_else(|| v.to_string(), |r| r.to_string())
}

fn equals_sqrt(r: &SeshadriResult, sqrt_a2: &ExactValue) -> bool {
    r.value.exact().is_some_and(|v| {
        seshadri_core::exactnum::cmp(&ExactValue::Rat(v.clone()), sqrt_a2).is_eq()
    })
}

fn witness_name(r: &SeshadriResult) -> String {
    r.witness.as_ref().map_or_else(String::new, |w| w.name.to_string())
}

/// One result-table record. `result` is `None` for classes that are not nef.
fn record(
    a: &str,
    b: &str,
    result: Option<(&SeshadriResult, &ExactValue)>,
    digits: usize,
) -> Vec<String> {
    match result {
        Some((r, sq)) => vec![
            a.into(),
            b.into(),
            "true".into(),
            r.value.to_string(),
            approx(&r.value, digits),
            sqrt_form(sq),
            witness_name(r),
            r.regime.clone(),
        ],
        None => vec![a.into(), b.into(), "false".into(), String::new(), String::new(), String::new(), String::new(), NOT_NEF.into()],
    }
}

pub fn result_csv<W: Write>(
    out: W,
    class: &DivisorClass,
    r: &SeshadriResult,
    sqrt_a2: &ExactValue,
    digits: usize,
) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_COLUMNS)?;
    w.write_record(record(&class.a.to_string(), &class.b.to_string(), Some((r, sqrt_a2)), digits))?;
    w.flush()
}

pub fn result_text(r: &SeshadriResult, sqrt_a2: &ExactValue, digits: usize) -> String {
    let witness = r.witness.as_ref().map_or_else(
        || "none".to_string(),
        |w| format!("{} {} mult {}", w.name, w.cls, w.mult),
    );
    format!(
        "epsilon  {}\napprox   {}\nsqrtA2   {}\nwitness  {witness}\nregime   {}\n",
        r.value,
        approx(&r.value, digits),
        sqrt_form(sqrt_a2),
        r.regime
    )
}

pub fn scan_csv<W: Write>(out: W, rows: &[ScanRow], digits: usize) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_COLUMNS)?;
    for row in rows {
        let res = row.result.as_ref().zip(row.sqrt_a2.as_ref());
        w.write_record(record(&row.a.to_string(), &row.b.to_string(), res, digits))?;
    }
    w.flush()
}

pub fn scan_json(rows: &[ScanRow], digits: usize) -> Value {
    let rows = rows
        .iter()
        .map(|row| {
            let mut m = Map::new();
            m.insert("a".into(), json!(row.a));
            m.insert("b".into(), json!(row.b));
            m.insert("nef".into(), json!(row.nef()));
            match (&row.result, &row.sqrt_a2) {
                (Some(r), Some(sq)) => {
                    let (eps, approx) = render::value_pair(&r.value, digits);
                    m.insert("epsilon".into(), eps);
                    m.insert("approx".into(), approx);
                    m.insert("sqrtA2".into(), json!(sqrt_form(sq)));
                    m.insert("equals_sqrtA2".into(), json!(equals_sqrt(r, sq)));
                    m.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, render::curve));
                    m.insert("regime".into(), json!(r.regime));
                }
                _ => {
                    m.insert("regime".into(), json!(NOT_NEF));
                }
            }
            Value::Object(m)
        })
        .collect();
    Value::Array(rows)
}

pub fn scan_text(rows: &[ScanRow], digits: usize) -> String {
    let mut out = String::new();
    for row in rows {
        let line = match (&row.result, &row.sqrt_a2) {
            (Some(r), Some(sq)) => {
                let mark = if equals_sqrt(r, sq) { "  = sqrtA2" } else { "" };
                format!(
                    "({}, {})  {}  ~{}  {}{mark}\n",
                    row.a,
                    row.b,
                    r.value,
                    approx(&r.value, digits),
                    r.regime
                )
            }
            _ => format!("({}, {})  {NOT_NEF}\n", row.a, row.b),
        };
        out.push_str(&line);
    }
    out
}

pub fn catalog_json(
    s: &SurfaceModel,
    x: PointStratum,
    depth: u64,
    curves: &[ExceptionalCurve],
) -> Value {
    let tail = family_tail(s, x, depth).ok().flatten();
    json!({
        "surface": s.to_string(),
        "stratum": x.to_string(),
        "depth": depth,
        "complete": is_complete(s, x),
        "curves": curves.iter().map(|c| render::catalog_entry(c, s)).collect::<Vec<_>>(),
        "tail": tail.as_ref().map_or(Value::Null, render::interval),
    })
}

fn influence_form(c: &ExceptionalCurve, s: &SurfaceModel) -> String {
    influence(c, s).map_or_else(|_| "unknown".to_string(), |i| i.to_string())
}

pub fn catalog_csv<W: Write>(out: W, s: &SurfaceModel, curves: &[ExceptionalCurve]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["name", "a", "b", "mult", "influence"])?;
    for c in curves {
        w.write_record([
            c.name.to_string(),
            c.cls.a.to_string(),
            c.cls.b.to_string(),
            c.mult.to_string(),
            influence_form(c, s),
        ])?;
    }
    w.flush()
}

pub fn catalog_text(s: &SurfaceModel, curves: &[ExceptionalCurve]) -> String {
    curves
        .iter()
        .map(|c| format!("{}  {}  mult {}  influence {}\n", c.name, c.cls, c.mult, influence_form(c, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use seshadri_core::exactnum::int;
    use seshadri_core::seshadri::scan;
    use seshadri_core::{compute, Execution, Torsion};

    #[test]
    fn csv_row_carries_exact_and_decimal_forms() {
        let s = SurfaceModel::ell_dec(Torsion::NonTorsion);
        let a = DivisorClass::from_ints(9, 1);
        let r = compute(&s, PointStratum::Generic, &a).unwrap();
        let mut buf = Vec::new();
        result_csv(&mut buf, &a, &r, &ExactValue::Sqrt(int(18)), 6).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "a,b,nef,epsilon_exact,epsilon_approx,sqrtA2_exact,witness,regime\n\
             9,1,true,21/5,4.200000,sqrt(18),C_2,C_n n=2\n"
        );
    }

    #[test]
    fn not_nef_rows_are_marked() {
        let s = SurfaceModel::product(1);
        let rows = scan(&s, PointStratum::Generic, -1..=-1, 0..=0, Execution::Sequential).unwrap();
        let mut buf = Vec::new();
        scan_csv(&mut buf, &rows, 6).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("-1,0,false,,,,,not-nef\n"));
        assert_eq!(scan_json(&rows, 6).to_string(), r#"[{"a":-1,"b":0,"nef":false,"regime":"not-nef"}]"#);
    }

    #[test]
    fn perfect_square_roots_print_as_rationals() {
        assert_eq!(sqrt_form(&ExactValue::Sqrt(int(16))), "4");
        assert_eq!(sqrt_form(&ExactValue::Sqrt(int(12))), "sqrt(12)");
    }
}
