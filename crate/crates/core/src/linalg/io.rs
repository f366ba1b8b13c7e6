//! Integer matrix interchange: CSV (one row per line, decimal entries) and
//! JSON `{"rows": r, "cols": c, "entries": [[...], ...]}`.
//!
//! JSON entries are written as plain numbers of arbitrary size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use super::matrix::IntMatrix;
use super::ring::Integers;
use crate::error::{Error, Result};

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn to_csv(m: &IntMatrix) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for r in 0..m.rows() {
        w.write_record(m.row(r).iter().map(|v| v.to_string()))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii digits")
}

pub fn from_csv(text: &str) -> Result<IntMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        rows.push(record.iter().map(parse_int).collect::<Result<Vec<_>>>()?);
    }
    IntMatrix::from_rows(Integers, rows)
}

pub fn to_json_value(m: &IntMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| {
            Value::Array(
                m.row(r)
                    .iter()
                    .map(|v| Value::Number(Number::from_str(&v.to_string()).expect("decimal integer")))
                    .collect(),
            )
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn to_json(m: &IntMatrix) -> String {
    serde_json::to_string(&to_json_value(m)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dim = |key: &str| {
        v.get(key)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("missing or invalid {key:?}")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"entries\"".into()))?;
    if entries.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{} rows listed, header says {rows}",
            entries.len()
        )));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("row is not an array".into()))?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {}, header says {cols}",
                row.len()
            )));
        }
        for e in row {
            match e {
                Value::Number(n) => flat.push(parse_int(&n.to_string())?),
                other => return Err(Error::Parse(format!("entry {other} is not an integer"))),
            }
        }
    }
    IntMatrix::from_vec(Integers, rows, cols, flat)
}
