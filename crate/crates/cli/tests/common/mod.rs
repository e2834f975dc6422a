//! Shared by the golden-file tests and the acceptance run.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub const CASES: &[(&str, &str, i32)] = &[
    ("classify_ia", "classify", 0),
    ("classify_zero", "classify", 0),
    ("classify_isotropic", "classify", 0),
    ("classify_theta", "classify", 0),
    ("classify_not_antisymmetric", "classify", 3),
    ("classify_malformed", "classify", 2),
    ("stabilizer_axis", "stabilizer", 0),
    ("stabilizer_isotropic", "stabilizer", 0),
    ("stabilizer_count_zero", "stabilizer", 0),
    ("stabilizer_sampled", "stabilizer", 0),
    ("stabilizer_zero", "stabilizer", 4),
    ("reduce_real", "reduce", 0),
    ("reduce_generic", "reduce", 0),
    ("reduce_isotropic", "reduce", 5),
    ("factor_boost", "factor", 0),
    ("factor_generic", "factor", 0),
    ("factor_isotropic", "factor", 0),
    ("factor_bad", "factor", 6),
    ("constitutive_vacuum", "constitutive", 0),
    ("constitutive_real_k", "constitutive", 0),
    ("dual_scan_4", "dual-scan", 0),
    ("dual_scan_32", "dual-scan", 0),
    ("dual_scan_vacuum", "dual-scan", 0),
    ("dual_scan_bad_steps", "dual-scan", 2),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(cmd: &str, input: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncframe"))
        .arg(cmd)
        .arg("--in")
        .arg(input)
        .args(extra)
        .output()
        .expect("binary runs")
}

pub fn numbers_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

pub fn compare(got: &Value, want: &Value, path: &str, errors: &mut Vec<String>) {
    match (got, want) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            if !numbers_close(a, b) {
                errors.push(format!("{path}: {a} vs {b}"));
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                errors.push(format!("{path}: length {} vs {}", a.len(), b.len()));
                return;
            }
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                compare(x, y, &format!("{path}[{i}]"), errors);
            }
        }
        (Value::Object(a), Value::Object(b)) => {
            let (ka, kb): (Vec<_>, Vec<_>) = (a.keys().collect(), b.keys().collect());
            if ka != kb {
                errors.push(format!("{path}: keys {ka:?} vs {kb:?}"));
                return;
            }
            for (k, x) in a {
                compare(x, &b[k], &format!("{path}.{k}"), errors);
            }
        }
        (a, b) if a == b => {}
        (a, b) => errors.push(format!("{path}: {a} vs {b}")),
    }
}

/// Runs every golden case; returns one message per mismatch.
pub fn check_all_golden(bless: bool) -> Vec<String> {
    let dir = golden_dir();
    let mut failures = Vec::new();
    for (name, cmd, code) in CASES {
        let out = run(cmd, &dir.join(format!("{name}.json")), &[]);
        if out.status.code() != Some(*code) {
            failures.push(format!(
                "{name}: exit {:?}, expected {code}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
            continue;
        }
        if *code != 0 {
            if !out.stdout.is_empty() || out.stderr.is_empty() {
                failures.push(format!("{name}: error case must print only to stderr"));
            }
            continue;
        }
        let expected = dir.join(format!("{name}.out.json"));
        if bless {
            std::fs::write(&expected, &out.stdout).unwrap();
            continue;
        }
        let got: Value = match serde_json::from_slice(&out.stdout) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{name}: stdout is not JSON: {e}"));
                continue;
            }
        };
        let want: Value = serde_json::from_str(&std::fs::read_to_string(&expected).unwrap()).unwrap();
        compare(&got, &want, name, &mut failures);
    }
    failures
}
