//! Sparse JSON exchange format:
//! `{"kind": "webster" | "hermitian" | "torsion", "n": 2, "entries": [[i1, ..., re, im], ...]}`.
//!
//! Only nonzero components are listed, indices are 0-based, omitted
//! components are zero.

use serde_json::{json, Value};

use super::{CMatrix, HermitianMatrix, TorsionMatrix, WebsterTensor};
use crate::{Complex64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum TensorDocument {
    Webster(WebsterTensor),
    Hermitian(HermitianMatrix),
    Torsion(TorsionMatrix),
}

impl TensorDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            TensorDocument::Webster(_) => "webster",
            TensorDocument::Hermitian(_) => "hermitian",
            TensorDocument::Torsion(_) => "torsion",
        }
    }
}

fn dense(n: usize, rank: usize, entries: &[Value]) -> Result<Vec<Complex64>> {
    let mut data = vec![Complex64::new(0.0, 0.0); n.pow(rank as u32)];
    let mut seen = vec![false; data.len()];
    for (k, e) in entries.iter().enumerate() {
        let row = e
            .as_array()
            .ok_or_else(|| Error::Format(format!("entry {k} is not an array")))?;
        if row.len() != rank + 2 {
            return Err(Error::Format(format!(
                "entry {k} has {} fields, expected {}",
                row.len(),
                rank + 2
            )));
        }
        let mut pos = 0usize;
        for (slot, v) in row[..rank].iter().enumerate() {
            let i = v
                .as_u64()
                .ok_or_else(|| Error::Format(format!("entry {k}: index {slot} is not a non-negative integer")))?
                as usize;
            if i >= n {
                return Err(Error::Format(format!(
                    "entry {k}: index {i} out of range for n = {n}"
                )));
            }
            pos = pos * n + i;
        }
        let num = |v: &Value, what: &str| {
            v.as_f64()
                .ok_or_else(|| Error::Format(format!("entry {k}: {what} is not a number")))
        };
        let z = Complex64::new(num(&row[rank], "re")?, num(&row[rank + 1], "im")?);
        if seen[pos] {
            return Err(Error::Format(format!("entry {k}: duplicate component")));
        }
        seen[pos] = true;
        data[pos] = z;
    }
    Ok(data)
}

pub fn from_value(v: &Value) -> Result<TensorDocument> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Format("missing string field \"kind\"".into()))?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Format("missing integer field \"n\"".into()))? as usize;
    if n == 0 || n > 64 {
        return Err(Error::Format(format!("unsupported dimension n = {n}")));
    }
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing array field \"entries\"".into()))?;
    match kind {
        "webster" => Ok(TensorDocument::Webster(WebsterTensor::new(
            n,
            dense(n, 4, entries)?,
        )?)),
        "hermitian" => Ok(TensorDocument::Hermitian(HermitianMatrix::new(
            CMatrix::from_vec(n, dense(n, 2, entries)?),
        )?)),
        "torsion" => Ok(TensorDocument::Torsion(TorsionMatrix::new(CMatrix::from_vec(
            n,
            dense(n, 2, entries)?,
        ))?)),
        other => Err(Error::Format(format!("unknown tensor kind {other:?}"))),
    }
}

pub fn from_str(s: &str) -> Result<TensorDocument> {
    from_value(&serde_json::from_str(s)?)
}

fn sparse(kind: &str, n: usize, rank: usize, data: &[Complex64]) -> Value {
    let mut entries = Vec::new();
    for (pos, z) in data.iter().enumerate() {
        if z.re == 0.0 && z.im == 0.0 {
            continue;
        }
        let mut row = Vec::with_capacity(rank + 2);
        let mut rest = pos;
        let mut idx = vec![0usize; rank];
        for slot in (0..rank).rev() {
            idx[slot] = rest % n;
            rest /= n;
        }
        row.extend(idx.into_iter().map(Value::from));
        row.push(json!(z.re));
        row.push(json!(z.im));
        entries.push(Value::Array(row));
    }
    json!({ "kind": kind, "n": n, "entries": entries })
}

pub fn webster_to_value(t: &WebsterTensor) -> Value {
    sparse("webster", t.dim(), 4, t.as_slice())
}

pub fn hermitian_to_value(m: &HermitianMatrix) -> Value {
    sparse("hermitian", m.dim(), 2, m.as_matrix().as_slice())
}

pub fn torsion_to_value(m: &TorsionMatrix) -> Value {
    sparse("torsion", m.dim(), 2, m.as_matrix().as_slice())
}

pub fn to_value(doc: &TensorDocument) -> Value {
    match doc {
        TensorDocument::Webster(t) => webster_to_value(t),
        TensorDocument::Hermitian(m) => hermitian_to_value(m),
        TensorDocument::Torsion(m) => torsion_to_value(m),
    }
}
