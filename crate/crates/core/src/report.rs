//! Check results and JSON/DOT encoding shared by every module.
//!
//! Reals are written with 17 significant digits so reports are bit-exact
//! and byte-stable across runs.

use serde_json::{json, Map, Number, Value};

pub const SCHEMA: &str = "tensorcat-report/1";

/// Integer matrix, `m[row][col]`.
pub type IntMatrix = Vec<Vec<usize>>;

/// A real encoded with 17 significant digits. Non-finite values become strings.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(format!("{x}"));
    }
    let s = format!("{x:.16e}");
    let n: Number = s.parse().expect("formatted float parses");
    Value::Number(n)
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m)
}

/// One numerical or boolean check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `residual <= threshold` (NaN never passes).
    pub fn residual(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Check { name: name.into(), residual, threshold, passed: residual <= threshold }
    }

    /// A yes/no check; the residual is `0` or `1`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, threshold: 0.0, passed: ok }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "residual": real(self.residual),
            "threshold": real(self.threshold),
            "passed": self.passed,
        })
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn residual(&mut self, name: impl Into<String>, residual: f64, threshold: f64) {
        self.push(Check::residual(name, residual, threshold));
    }

    pub fn flag(&mut self, name: impl Into<String>, ok: bool) {
        self.push(Check::flag(name, ok));
    }

    /// Append another report, prefixing its check names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Wrap a payload with the schema tag and run parameters.
pub fn envelope(command: &str, params: Map<String, Value>, body: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "tool": { "name": "tensorcat", "version": env!("CARGO_PKG_VERSION") },
        "command": command,
        "parameters": Value::Object(params),
        "result": body,
    })
}

/// Quote a DOT identifier.
pub fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_keep_seventeen_digits() {
        let v = real(0.1 + 0.2);
        assert_eq!(v.to_string(), "3.0000000000000004e-1");
        let back: f64 = v.to_string().parse().unwrap();
        assert_eq!(back, 0.1 + 0.2);
        assert_eq!(real(f64::NAN), Value::String("NaN".into()));
        assert_eq!(real(4.0).to_string(), "4.0000000000000000e+0");
    }

    #[test]
    fn report_aggregates_checks() {
        let mut r = CheckReport::new();
        r.residual("a", 1e-12, 1e-8);
        r.flag("b", true);
        assert!(r.passed());
        r.residual("c", f64::NAN, 1e-8);
        assert!(!r.passed());
        assert_eq!(r.failures()[0].name, "c");
        assert_eq!(r.to_json()["checks"][0]["name"], "a");
    }

    #[test]
    fn dot_ids_are_quoted() {
        assert_eq!(dot_id("a\"b"), "\"a\\\"b\"");
    }
}
