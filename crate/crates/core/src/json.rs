//! Shared JSON formats. Rationals travel as exact strings `"p/q"` or `"p"`.
//!
//! ```text
//! polytope:   {"dim": n, "vertices": [["p/q", ...], ...]}
//! linear map: {"entries": [["p/q", ...], ...]}
//! value:      "p/q" | ["p/q", ...] | [["p/q", ...], ...]
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::functionals::Value;
use crate::geometry::{convex_hull, Polytope};
use crate::linalg::{LinearMap, Matrix, Vector};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LinearMapDoc {
    pub entries: Vec<Vec<String>>,
}

fn parse<T: Scalar>(s: &str) -> Result<T> {
    parse_scalar(s).ok_or_else(|| Error::Parse(format!("not an exact rational: {s:?}")))
}

fn strings<T: Scalar>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn scalar_to_json<T: Scalar>(x: &T) -> Json {
    Json::String(x.to_string())
}

pub fn scalar_from_json<T: Scalar>(j: &Json) -> Result<T> {
    match j {
        Json::String(s) => parse(s),
        Json::Number(n) if n.is_i64() => parse(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
    }
}

pub fn polytope_to_doc<T: Scalar>(p: &Polytope<T>) -> PolytopeDoc {
    PolytopeDoc { dim: p.dim(), vertices: p.vertices().iter().map(|v| strings(v.coords())).collect() }
}

/// Parses and canonicalizes: redundant points in the input are dropped.
pub fn polytope_from_doc<T: Scalar>(doc: &PolytopeDoc) -> Result<Polytope<T>> {
    let mut pts = Vec::with_capacity(doc.vertices.len());
    for row in &doc.vertices {
        if row.len() != doc.dim {
            return Err(Error::DimensionMismatch(doc.dim, row.len()));
        }
        pts.push(Vector::new(row.iter().map(|s| parse(s)).collect::<Result<Vec<T>>>()?));
    }
    convex_hull(&pts)
}

pub fn polytope_to_json<T: Scalar>(p: &Polytope<T>) -> Json {
    serde_json::to_value(polytope_to_doc(p)).expect("plain data")
}

pub fn polytope_from_json<T: Scalar>(j: &Json) -> Result<Polytope<T>> {
    let doc: PolytopeDoc = serde_json::from_value(j.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    polytope_from_doc(&doc)
}

pub fn polytope_from_str<T: Scalar>(s: &str) -> Result<Polytope<T>> {
    let doc: PolytopeDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    polytope_from_doc(&doc)
}

pub fn linear_map_to_json<T: Scalar>(m: &LinearMap<T>) -> Json {
    serde_json::to_value(LinearMapDoc { entries: m.matrix().to_rows().iter().map(|r| strings(r)).collect() })
        .expect("plain data")
}

pub fn linear_map_from_json<T: Scalar>(j: &Json) -> Result<LinearMap<T>> {
    let doc: LinearMapDoc = serde_json::from_value(j.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = doc
        .entries
        .iter()
        .map(|r| r.iter().map(|s| parse(s)).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    LinearMap::from_rows(rows)
}

pub fn value_to_json<T: Scalar>(v: &Value<T>) -> Json {
    match v {
        Value::Scalar(s) => scalar_to_json(s),
        Value::Vector(x) => json!(strings(x.coords())),
        Value::Matrix(m) => json!(m.to_rows().iter().map(|r| strings(r)).collect::<Vec<_>>()),
    }
}

pub fn value_from_json<T: Scalar>(j: &Json) -> Result<Value<T>> {
    match j {
        Json::Array(items) if items.iter().all(Json::is_array) && !items.is_empty() => {
            let rows = items
                .iter()
                .map(|r| r.as_array().expect("checked").iter().map(scalar_from_json).collect::<Result<Vec<T>>>())
                .collect::<Result<Vec<_>>>()?;
            let c = rows[0].len();
            if rows.iter().any(|r| r.len() != c) {
                return Err(Error::Parse("ragged matrix".into()));
            }
            Ok(Value::Matrix(Matrix::from_rows(rows)))
        }
        Json::Array(items) => {
            Ok(Value::Vector(Vector::new(items.iter().map(scalar_from_json).collect::<Result<Vec<T>>>()?)))
        }
        other => Ok(Value::Scalar(scalar_from_json(other)?)),
    }
}
