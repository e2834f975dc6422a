//! Report assembly and serialisation.

use std::io::{self, Write};

use ncframe_core::linalg::{CMat3, CVec3, RMat4, C64};
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::{json, Map, Value};

/// Writes every float with 17 significant digits.
struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, FullPrecision);
    v.serialize(&mut ser).expect("serialising a JSON value cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Flattened `path: value` lines.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    text_walk(v, "", &mut out);
    out
}

fn text_walk(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                text_walk(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            let items: Vec<String> = a.iter().map(|x| x.as_f64().map(short).unwrap_or_default()).collect();
            out.push_str(&format!("{path}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                text_walk(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::Number(n) if !n.is_f64() => out.push_str(&format!("{path}: {n}\n")),
        Value::Number(n) => out.push_str(&format!("{path}: {}\n", n.as_f64().map(short).unwrap_or_default())),
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        other => out.push_str(&format!("{path}: {other}\n")),
    }
}

fn short(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{}", (x * 1e10).round() / 1e10)
    } else {
        format!("{x:.6e}")
    }
}

pub fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn cvec(v: &CVec3) -> Value {
    Value::Array(v.0.iter().map(|z| c(*z)).collect())
}

pub fn cmat(m: &CMat3) -> Value {
    Value::Array(m.0.iter().map(|row| Value::Array(row.iter().map(|z| c(*z)).collect())).collect())
}

pub fn rmat4(m: &RMat4) -> Value {
    json!(m.0)
}

/// A thresholded residual.
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold }
    }

    pub fn pass(&self) -> bool {
        self.value <= self.threshold
    }
}

pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self { command, body: Map::new(), checks: Vec::new() }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        self.checks.push(Check::new(name, value, threshold));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn finish(self, header: Value) -> Value {
        let pass = self.pass();
        let mut out = Map::new();
        if let Value::Object(h) = header {
            out.extend(h);
        }
        out.insert("command".into(), json!(self.command));
        out.extend(self.body);
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "value": finite(c.value), "threshold": c.threshold, "pass": c.pass()}))
            .collect();
        out.insert("checks".into(), Value::Array(checks));
        out.insert("pass".into(), json!(pass));
        Value::Object(out)
    }
}

/// `NaN`/`inf` have no JSON form; they are written as strings.
pub fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}
