//! The arrangement file: a JSON document with integers only.
//!
//! ```json
//! {
//!   "field": { "m": 3 },
//!   "tau": { "a": -1, "b": 2, "c": 1 },
//!   "matrix": {
//!     "rows": 2,
//!     "cols": 1,
//!     "entries": [
//!       [[2, 0]],
//!       [[1, 1]]
//!     ]
//!   }
//! }
//! ```
//!
//! Each entry `[x, y]` stands for `x + y * N * tau`. [`to_canonical_string`] writes exactly
//! the layout above, so generated files are byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::arrangement::EllipticArrangement;
use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::quadratic_order::{CurveParams, FieldParams, RingElement};

fn format_err(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Format { context: context.into(), message: message.into() }
}

fn object<'a>(value: &'a Value, path: &str, keys: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = value.as_object().ok_or_else(|| format_err(path, "expected an object"))?;
    for key in obj.keys() {
        if !keys.contains(&key.as_str()) {
            return Err(format_err(path, format!("unknown field `{key}`")));
        }
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| format_err(path, format!("missing field `{key}`")))
}

fn integer(value: &Value, path: &str) -> Result<BigInt> {
    match value {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| format_err(path, format!("expected an integer, got {n}"))),
        other => Err(format_err(path, format!("expected an integer, got {other}"))),
    }
}

fn small(value: &Value, path: &str) -> Result<i64> {
    i64::try_from(integer(value, path)?).map_err(|_| format_err(path, "integer out of range"))
}

fn count(value: &Value, path: &str) -> Result<usize> {
    usize::try_from(integer(value, path)?)
        .map_err(|_| format_err(path, "expected a non-negative integer"))
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| format_err(path, "expected an array"))
}

/// Parses and validates an arrangement document.
pub fn parse_str(text: &str) -> Result<EllipticArrangement> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        format_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let root = object(&doc, "document", &["field", "tau", "matrix"])?;

    let field_obj = object(field(root, "document", "field")?, "field", &["m"])?;
    let m = small(field(field_obj, "field", "m")?, "field.m")?;
    let field_params = FieldParams::new(m).map_err(|e| format_err("field.m", e.to_string()))?;

    let tau = object(field(root, "document", "tau")?, "tau", &["a", "b", "c"])?;
    let a = integer(field(tau, "tau", "a")?, "tau.a")?;
    let b = integer(field(tau, "tau", "b")?, "tau.b")?;
    let c = integer(field(tau, "tau", "c")?, "tau.c")?;
    let curve =
        CurveParams::new(field_params, a, b, c).map_err(|e| format_err("tau", e.to_string()))?;

    let matrix = object(field(root, "document", "matrix")?, "matrix", &["rows", "cols", "entries"])?;
    let k = count(field(matrix, "matrix", "rows")?, "matrix.rows")?;
    let n = count(field(matrix, "matrix", "cols")?, "matrix.cols")?;
    let rows = array(field(matrix, "matrix", "entries")?, "matrix.entries")?;
    if rows.len() != k {
        return Err(format_err(
            "matrix.entries",
            format!("{} rows given but matrix.rows = {k}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(k * n);
    for (i, row) in rows.iter().enumerate() {
        let path = format!("matrix.entries[{i}]");
        let row = array(row, &path)?;
        if row.len() != n {
            return Err(format_err(&path, format!("{} entries given but matrix.cols = {n}", row.len())));
        }
        for (j, pair) in row.iter().enumerate() {
            let path = format!("matrix.entries[{i}][{j}]");
            let pair = array(pair, &path)?;
            if pair.len() != 2 {
                return Err(format_err(&path, "expected a pair [x, y]"));
            }
            let x = integer(&pair[0], &format!("{path}[0]"))?;
            let y = integer(&pair[1], &format!("{path}[1]"))?;
            entries.push(RingElement { x, y });
        }
    }
    let matrix = RingMatrix::new(curve, k, n, entries)?;
    EllipticArrangement::new(matrix).map_err(|e| format_err("matrix", e.to_string()))
}

pub fn parse_file(path: impl AsRef<Path>) -> Result<EllipticArrangement> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| format_err(path.display().to_string(), e.to_string()))?;
    parse_str(&text).map_err(|e| match e {
        Error::Format { context, message } => {
            format_err(format!("{}: {context}", path.display()), message)
        }
        other => other,
    })
}

/// Canonical text of a matrix over its curve, ending in a newline.
pub fn to_canonical_string(matrix: &RingMatrix) -> String {
    let curve = matrix.curve();
    let (a, b, c) = curve.tau();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"field\": {{ \"m\": {} }},", curve.field().m());
    let _ = writeln!(out, "  \"tau\": {{ \"a\": {a}, \"b\": {b}, \"c\": {c} }},");
    out.push_str("  \"matrix\": {\n");
    let _ = writeln!(out, "    \"rows\": {},", matrix.k());
    let _ = writeln!(out, "    \"cols\": {},", matrix.n());
    if matrix.k() == 0 {
        out.push_str("    \"entries\": []\n");
    } else {
        out.push_str("    \"entries\": [\n");
        for i in 0..matrix.k() {
            let row: Vec<String> =
                matrix.row(i).iter().map(|e| format!("[{}, {}]", e.x, e.y)).collect();
            let sep = if i + 1 < matrix.k() { "," } else { "" };
            let _ = writeln!(out, "      [{}]{sep}", row.join(", "));
        }
        out.push_str("    ]\n");
    }
    out.push_str("  }\n}\n");
    out
}
