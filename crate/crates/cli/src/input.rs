//! JSON input documents.

use std::io::Read;
use std::path::Path;

use ncframe_core::linalg::{CVec3, RMat4, C64};
use ncframe_core::stabilizer::{k_to_theta, theta_to_k_with_tol};
use serde_json::Value;

use crate::CliError;

/// Antisymmetry tolerance for a matrix-form `θ`, relative to `max(1, ‖θ‖∞)`.
pub const THETA_TOL: f64 = 1e-9;

pub struct Input {
    pub raw: Value,
}

impl Input {
    pub fn read(path: Option<&Path>) -> Result<Self, CliError> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| CliError::malformed(format!("cannot read {}: {e}", p.display())))?,
            None => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::malformed(format!("cannot read stdin: {e}")))?;
                s
            }
        };
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: Value = serde_json::from_str(text).map_err(|e| CliError::malformed(format!("invalid JSON: {e}")))?;
        if !raw.is_object() {
            return Err(CliError::malformed("input must be a JSON object"));
        }
        Ok(Self { raw })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.raw.get(key).filter(|v| !v.is_null())
    }

    /// `θ` and `K` from either `"theta"` (16 numbers, flat or 4×4) or
    /// `"nm"` = `[n1, n2, n3, m1, m2, m3]`.
    pub fn theta(&self) -> Result<(RMat4, CVec3), CliError> {
        match (self.get("theta"), self.get("nm")) {
            (Some(_), Some(_)) => Err(CliError::malformed("give either \"theta\" or \"nm\", not both")),
            (None, None) => Err(CliError::malformed("missing \"theta\" or \"nm\"")),
            (Some(t), None) => {
                let flat = flatten(t).ok_or_else(|| CliError::malformed("\"theta\" must hold 16 numbers"))?;
                if flat.len() != 16 {
                    return Err(CliError::malformed(format!("\"theta\" has {} numbers, expected 16", flat.len())));
                }
                let mut m = RMat4::zero();
                for (i, x) in flat.iter().enumerate() {
                    m.0[i / 4][i % 4] = *x;
                }
                let k = theta_to_k_with_tol(&m, THETA_TOL).map_err(|e| CliError::new(3, e.to_string()))?;
                Ok((m, k))
            }
            (None, Some(v)) => {
                let nm = numbers(v, 6, "nm")?;
                let k = CVec3::from_parts([nm[0], nm[1], nm[2]], [nm[3], nm[4], nm[5]]);
                Ok((k_to_theta(&k), k))
            }
        }
    }

    pub fn vec3(&self, key: &str) -> Result<Option<[f64; 3]>, CliError> {
        self.get(key)
            .map(|v| numbers(v, 3, key).map(|n| [n[0], n[1], n[2]]))
            .transpose()
    }

    pub fn require_vec3(&self, key: &str) -> Result<[f64; 3], CliError> {
        self.vec3(key)?.ok_or_else(|| CliError::malformed(format!("missing \"{key}\"")))
    }

    pub fn numbers(&self, key: &str, len: usize) -> Result<Option<Vec<f64>>, CliError> {
        self.get(key).map(|v| numbers(v, len, key)).transpose()
    }

    /// `[re, im]` or a plain real number.
    pub fn complex(&self, key: &str) -> Result<Option<C64>, CliError> {
        let Some(v) = self.get(key) else { return Ok(None) };
        if let Some(x) = v.as_f64() {
            return Ok(Some(C64::new(x, 0.0)));
        }
        let n = numbers(v, 2, key)?;
        Ok(Some(C64::new(n[0], n[1])))
    }

    pub fn count(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| CliError::malformed(format!("\"{key}\" must be a non-negative integer"))),
        }
    }

    /// List of reals, or `None` when absent.
    pub fn real_list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        let Some(v) = self.get(key) else { return Ok(None) };
        let arr = v
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("\"{key}\" must be an array of numbers")))?;
        arr.iter()
            .map(|x| x.as_f64().ok_or_else(|| CliError::malformed(format!("\"{key}\" must be an array of numbers"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

fn flatten(v: &Value) -> Option<Vec<f64>> {
    match v {
        Value::Number(n) => n.as_f64().map(|x| vec![x]),
        Value::Array(items) => {
            let mut out = Vec::new();
            for item in items {
                out.extend(flatten(item)?);
            }
            Some(out)
        }
        _ => None,
    }
}

fn numbers(v: &Value, len: usize, key: &str) -> Result<Vec<f64>, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::malformed(format!("\"{key}\" must be an array of {len} numbers")))?;
    if arr.len() != len {
        return Err(CliError::malformed(format!("\"{key}\" has {} entries, expected {len}", arr.len())));
    }
    arr.iter()
        .map(|x| {
            x.as_f64()
                .filter(|f| f.is_finite())
                .ok_or_else(|| CliError::malformed(format!("\"{key}\" must contain only numbers")))
        })
        .collect()
}
