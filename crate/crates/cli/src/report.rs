use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use ncsphere::exprio::format_element;
use ncsphere::matrix::MatrixCheck;
use ncsphere::ncpoly::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub witness: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub params: Map<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// What a single check found.
pub struct Outcome {
    pub passed: bool,
    pub details: String,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass(details: impl Into<String>) -> Self {
        Self { passed: true, details: details.into(), witness: None }
    }

    pub fn fail(details: impl Into<String>, witness: Option<String>) -> Self {
        Self { passed: false, details: details.into(), witness }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }
}

impl Report {
    pub fn new(task: impl Into<String>) -> Self {
        Self { task: task.into(), params: Map::new(), checks: Vec::new(), passed: true }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Runs `f` and records its outcome; a library error counts as a failed check.
    pub fn check(&mut self, name: &str, f: impl FnOnce() -> ncsphere::Result<Outcome>) -> bool {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::fail(e.to_string(), None));
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let status = if outcome.passed { Status::Pass } else { Status::Fail };
        self.passed &= outcome.passed;
        self.checks.push(Check { name: name.to_string(), status, details: outcome.details, witness: outcome.witness, wall_ms });
        outcome.passed
    }

    /// Appends the checks of another report under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.passed &= c.status == Status::Pass;
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("task: {}\n", self.task);
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = writeln!(out, "params: {}", params.join(" "));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(out, "  {tag} {} ({:.1} ms): {}", c.name, c.wall_ms, c.details);
            if let Some(w) = &c.witness {
                for line in w.lines() {
                    let _ = writeln!(out, "       {line}");
                }
            }
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// First failing entry as `(row, col): residual`, one-based.
pub fn matrix_witness(pres: &Presentation, check: &MatrixCheck) -> Option<String> {
    check
        .failures
        .first()
        .map(|f| format!("entry ({}, {}): {}", f.row + 1, f.col + 1, format_element(pres, &f.residual)))
}

pub fn matrix_outcome(pres: &Presentation, check: &MatrixCheck, ok: &str, bad: &str) -> Outcome {
    if check.passed() {
        Outcome::pass(ok)
    } else {
        Outcome::fail(format!("{bad} at {} entries", check.failures.len()), matrix_witness(pres, check))
    }
}
