//! JSON encoding of diagrams and scan results.
//!
//! Infinite deaths are written as the string `"inf"`. Numbers use the
//! shortest representation that round-trips exactly.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::grassmann::Flat;
use crate::persistence::PersistenceDiagram;
use crate::transform::{DphtResult, EulerCurve, FlatRecord};

fn num(x: f64) -> Value {
    if x == f64::INFINITY {
        Value::String("inf".into())
    } else {
        json!(x)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad(format!("{what}: not a number"))),
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        _ => Err(bad(format!("{what}: expected a number"))),
    }
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("{what}: expected a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn vector(v: &Value, what: &str) -> Result<Vec<f64>> {
    as_array(v, what)?.iter().map(|x| as_f64(x, what)).collect()
}

pub fn diagram_to_json(d: &PersistenceDiagram) -> Value {
    let points: Vec<Value> = d.points().iter().map(|&(b, e)| json!([num(b), num(e)])).collect();
    json!({ "degree": d.degree(), "points": points })
}

pub fn diagram_from_json(v: &Value) -> Result<PersistenceDiagram> {
    let degree = as_usize(field(v, "degree")?, "degree")?;
    let points = as_array(field(v, "points")?, "points")?
        .iter()
        .map(|p| {
            let pair = as_array(p, "point")?;
            if pair.len() != 2 {
                return Err(bad("point: expected [birth, death]"));
            }
            Ok((as_f64(&pair[0], "birth")?, as_f64(&pair[1], "death")?))
        })
        .collect::<Result<Vec<_>>>()?;
    PersistenceDiagram::new(degree, points).map_err(|e| bad(e.to_string()))
}

fn flat_to_json(r: &FlatRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("basis".into(), json!(r.flat.basis()));
    obj.insert("displacement".into(), json!(r.flat.displacement()));
    obj.insert("diagrams".into(), Value::Array(r.diagrams.iter().map(diagram_to_json).collect()));
    if let Some(curve) = &r.euler_curve {
        let pts: Vec<Value> = curve.breakpoints().iter().map(|&(x, c)| json!([num(x), c])).collect();
        obj.insert("euler_curve".into(), Value::Array(pts));
    }
    if let Some(chi) = r.slice_chi {
        obj.insert("slice_chi".into(), json!(chi));
    }
    Value::Object(obj)
}

fn flat_from_json(v: &Value) -> Result<FlatRecord> {
    let basis = as_array(field(v, "basis")?, "basis")?
        .iter()
        .map(|b| vector(b, "basis"))
        .collect::<Result<Vec<_>>>()?;
    let displacement = vector(field(v, "displacement")?, "displacement")?;
    let flat = Flat::from_normal_form(basis, displacement).map_err(|e| bad(e.to_string()))?;
    let diagrams = as_array(field(v, "diagrams")?, "diagrams")?
        .iter()
        .map(diagram_from_json)
        .collect::<Result<Vec<_>>>()?;
    let euler_curve = match v.get("euler_curve") {
        None | Some(Value::Null) => None,
        Some(c) => Some(EulerCurve(
            as_array(c, "euler_curve")?
                .iter()
                .map(|p| {
                    let pair = as_array(p, "euler_curve point")?;
                    if pair.len() != 2 {
                        return Err(bad("euler_curve point: expected [r, chi]"));
                    }
                    let chi = pair[1].as_i64().ok_or_else(|| bad("euler_curve: chi must be an integer"))?;
                    Ok((as_f64(&pair[0], "euler_curve")?, chi))
                })
                .collect::<Result<Vec<_>>>()?,
        )),
    };
    let slice_chi = match v.get("slice_chi") {
        None | Some(Value::Null) => None,
        Some(c) => Some(c.as_i64().ok_or_else(|| bad("slice_chi must be an integer"))?),
    };
    Ok(FlatRecord {
        flat,
        diagrams,
        euler_curve,
        slice_chi,
    })
}

pub fn dpht_to_json(r: &DphtResult) -> Value {
    json!({
        "shape_id": r.shape_id,
        "m": r.m,
        "flats": r.records.iter().map(flat_to_json).collect::<Vec<_>>(),
    })
}

pub fn dpht_from_json(v: &Value) -> Result<DphtResult> {
    let shape_id = field(v, "shape_id")?
        .as_str()
        .ok_or_else(|| bad("shape_id: expected a string"))?
        .to_string();
    let m = as_usize(field(v, "m")?, "m")?;
    let records = as_array(field(v, "flats")?, "flats")?
        .iter()
        .map(flat_from_json)
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = records.iter().find(|r| r.flat.flat_dim() != m) {
        return Err(bad(format!("flat of dimension {} in a scan with m = {m}", r.flat.flat_dim())));
    }
    Ok(DphtResult { shape_id, m, records })
}

pub fn dpht_to_string(r: &DphtResult) -> String {
    serde_json::to_string_pretty(&dpht_to_json(r)).expect("JSON values serialise")
}

pub fn dpht_from_str(text: &str) -> Result<DphtResult> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    dpht_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_round_trip_with_infinity() {
        let d = PersistenceDiagram::new(1, vec![(0.1, f64::INFINITY), (0.25, 1.0 / 3.0)]).unwrap();
        let v = diagram_to_json(&d);
        assert_eq!(v["points"][0][1], json!("inf"));
        let text = serde_json::to_string(&v).unwrap();
        let back = diagram_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(dpht_from_str("{"), Err(Error::Json(_))));
        assert!(matches!(dpht_from_str("{\"m\": 1}"), Err(Error::Json(_))));
        let bad_point = json!({"degree": 0, "points": [[1.0, 0.0]]});
        assert!(matches!(diagram_from_json(&bad_point), Err(Error::Json(_))));
        let bad_flat = r#"{"shape_id": "x", "m": 1, "flats": [
            {"basis": [[1.0, 1.0]], "displacement": [0.0, 0.0], "diagrams": []}]}"#;
        assert!(matches!(dpht_from_str(bad_flat), Err(Error::Json(_))));
    }
}
