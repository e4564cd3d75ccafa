//! Group-spec files:
//!
//! ```json
//! {"p": 7, "m": 2, "N": 8, "zeta_order": 3,
//!  "generators": [[[{"1": 1}, {}], [{}, {"-1": 1}]]]}
//! ```
//!
//! Each matrix entry is a Laurent polynomial in `z` (a primitive
//! `zeta_order`-th root of unity) written as an exponent → coefficient map.
//! `p`, `m` and `N` are optional and yield to command-line flags.

use mixquiver::{CyclotomicMatrixSpec, LaurentEntry};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid field {field}: {message}")]
    Validation { field: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpecFile {
    pub p: Option<u64>,
    pub m: Option<usize>,
    pub precision: Option<u32>,
    pub spec: CyclotomicMatrixSpec,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Validation { field: field.into(), message: message.into() }
}

fn optional_uint(obj: &serde_json::Map<String, Value>, key: &str) -> Result<Option<u64>, SpecError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_u64().map(Some).ok_or_else(|| invalid(key, "expected a non-negative integer")),
    }
}

fn parse_entry(v: &Value, path: &str) -> Result<LaurentEntry, SpecError> {
    let obj = v.as_object().ok_or_else(|| invalid(path, "expected an object mapping exponents to coefficients"))?;
    let mut entry = LaurentEntry::new();
    for (k, c) in obj {
        let exp: i64 = k.trim().parse().map_err(|_| invalid(format!("{path}.{k}"), "exponent must be an integer"))?;
        let coeff = c.as_i64().ok_or_else(|| invalid(format!("{path}.{k}"), "coefficient must be an integer"))?;
        if coeff != 0 {
            *entry.entry(exp).or_insert(0) += coeff;
        }
    }
    entry.retain(|_, c| *c != 0);
    Ok(entry)
}

/// Parses and validates a group-spec document.
pub fn parse_group_spec(text: &str) -> Result<GroupSpecFile, SpecError> {
    let root: Value = serde_json::from_str(text).map_err(|e| SpecError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| invalid("$", "expected a JSON object"))?;
    let zeta_order = match obj.get("zeta_order") {
        None => return Err(invalid("zeta_order", "missing")),
        Some(v) => {
            v.as_u64().filter(|&n| n >= 1).ok_or_else(|| invalid("zeta_order", "expected a positive integer"))?
        }
    };
    let p = optional_uint(obj, "p")?;
    let m = optional_uint(obj, "m")?.map(|m| m as usize);
    let precision =
        optional_uint(obj, "N")?.map(|n| u32::try_from(n).map_err(|_| invalid("N", "too large"))).transpose()?;
    if precision == Some(0) {
        return Err(invalid("N", "precision must be at least 1"));
    }
    let gens = obj
        .get("generators")
        .ok_or_else(|| invalid("generators", "missing"))?
        .as_array()
        .ok_or_else(|| invalid("generators", "expected an array of 2×2 matrices"))?;
    let mut generators = Vec::with_capacity(gens.len());
    for (g, mat) in gens.iter().enumerate() {
        let path = format!("generators[{g}]");
        let rows = mat.as_array().filter(|r| r.len() == 2).ok_or_else(|| invalid(&path, "expected 2 rows"))?;
        let mut parsed: [[LaurentEntry; 2]; 2] = Default::default();
        for (i, row) in rows.iter().enumerate() {
            let row_path = format!("{path}[{i}]");
            let cells =
                row.as_array().filter(|c| c.len() == 2).ok_or_else(|| invalid(&row_path, "expected 2 entries"))?;
            for (j, cell) in cells.iter().enumerate() {
                parsed[i][j] = parse_entry(cell, &format!("{row_path}[{j}]"))?;
            }
        }
        generators.push(parsed);
    }
    Ok(GroupSpecFile { p, m, precision, spec: CyclotomicMatrixSpec { order_hint: zeta_order, generators } })
}
