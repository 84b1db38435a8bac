//! JSON and CSV emission. Integers and rationals are always written as
//! decimal strings so that output is bit-exact.
//!
//! Every JSON document carries `"schema": 1` and a `"kind"` tag.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::growth::GrowthReport;
use crate::kernel::{EpsSeries, Rational};
use crate::recurrence::{Orbit, ParamValue, RecurrenceDef};
use crate::surface::{residual, SurfaceParams, Triple};

pub const SCHEMA: u32 = 1;

pub(crate) fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_rational<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// `{"terms": [[power, "coefficient"], …], "precision": p}`; precision is
/// null for an exact series.
pub(crate) fn ser_series<S: Serializer>(x: &EpsSeries, s: S) -> Result<S::Ok, S::Error> {
    series_json(x).serialize(s)
}

pub fn series_json(x: &EpsSeries) -> Value {
    let terms: Vec<Value> = match x.valuation() {
        None => Vec::new(),
        Some(v) => x
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| json!([v + i as i64, c.to_string()]))
            .collect(),
    };
    json!({ "terms": terms, "precision": x.absolute_precision() })
}

/// Wraps `body` (which must serialise to an object) with the schema
/// version and a kind tag.
pub fn envelope(kind: &str, body: impl Serialize) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("kind".into(), json!(kind));
    match serde_json::to_value(body).expect("report serialises") {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("data".into(), other);
        }
    }
    Value::Object(out)
}

pub fn recurrence_json(def: &RecurrenceDef) -> Value {
    let params: Map<String, Value> = def
        .params()
        .iter()
        .map(|(k, v)| {
            let v = match v {
                ParamValue::Exact(r) => json!(r.to_string()),
                ParamValue::Symbolic => Value::Null,
            };
            (k.clone(), v)
        })
        .collect();
    json!({
        "name": def.name(),
        "order": def.order(),
        "form": format!("{:?}", def.form()),
        "rhs": def.rhs().to_string(),
        "params": params,
    })
}

/// Orbit document: values in their text form, plus failure and period
/// metadata.
pub fn orbit_json<V: crate::recurrence::Value>(def: &RecurrenceDef, orbit: &Orbit<V>) -> Value {
    envelope(
        "orbit",
        json!({
            "recurrence": recurrence_json(def),
            "domain": orbit.domain,
            "offset": orbit.offset,
            "values": orbit.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "failure": orbit.failure,
            "detected_period": orbit.detected_period,
        }),
    )
}

pub fn write_json<W: Write>(mut w: W, v: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

/// Columns `n,value`.
pub fn write_orbit_csv<W: Write, V: crate::recurrence::Value>(w: W, orbit: &Orbit<V>) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["n", "value"])?;
    for (n, v) in orbit.indexed() {
        out.write_record([n.to_string(), v.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// Columns `n,x,y,z,residual`; row 0 is the seed when given.
pub fn write_triples_csv<W: Write>(
    w: W,
    seed: Option<&Triple>,
    triples: &[Triple],
    s: &SurfaceParams,
) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["n", "x", "y", "z", "residual"])?;
    let first = usize::from(seed.is_none());
    for (n, t) in seed.into_iter().chain(triples).enumerate() {
        out.write_record([
            (n + first).to_string(),
            t.x().to_string(),
            t.y().to_string(),
            t.z().to_string(),
            residual(t, s).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn float_cell(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:e}"))
}

/// Columns `n,H,Lambda,ratio,second_diff,second_diff_log_abs,slope`.
/// Cells without a defined value are left empty.
pub fn write_growth_csv<W: Write>(w: W, rep: &GrowthReport) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["n", "H", "Lambda", "ratio", "second_diff", "second_diff_log_abs", "slope"])?;
    let s = &rep.series;
    for i in 0..s.len() {
        let d = rep.second_diffs.get(i);
        out.write_record([
            s.indices[i].to_string(),
            s.heights[i].to_string(),
            float_cell(Some(s.lambda[i])),
            float_cell(rep.ratios.get(i).copied().flatten()),
            float_cell(d.map(|d| d.value)),
            float_cell(d.map(|d| d.log_abs).filter(|x| x.is_finite())),
            float_cell(rep.slopes[i]),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::make_builtin;

    #[test]
    fn orbit_documents() {
        let d = make_builtin("jrec", &[("J", ParamValue::int(0))]).unwrap();
        let o = d.iterate(&[BigInt::from(1), BigInt::from(1), BigInt::from(1)], 3).unwrap();
        let v = orbit_json(&d, &o);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["values"], json!(["1", "1", "1", "2", "5", "29"]));
        assert_eq!(v["failure"], Value::Null);
        let mut buf = Vec::new();
        write_orbit_csv(&mut buf, &o).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,value\n0,1\n1,1\n2,1\n3,2\n4,5\n5,29\n");
    }

    #[test]
    fn series_pairs() {
        let s = EpsSeries::parse("4 + 1/8*eps + O(eps^3)").unwrap();
        assert_eq!(series_json(&s), json!({"terms": [[0, "4"], [1, "1/8"]], "precision": 3}));
    }

    #[test]
    fn triples_csv() {
        let s = SurfaceParams::from_ints(3, 0);
        let mut buf = Vec::new();
        write_triples_csv(&mut buf, Some(&Triple::ones()), &[Triple::from_ints(1, 1, 2)], &s).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,x,y,z,residual\n0,1,1,1,0\n1,1,1,2,0\n");
    }
}
