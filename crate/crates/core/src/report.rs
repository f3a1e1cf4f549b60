//! Suite reports: a list of named checks with pass/fail/skipped status.

use serde_json::{json, Value};
use std::fmt::Write;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub order: Option<usize>,
    pub window: Option<usize>,
    pub checks: Vec<Check>,
    pub conventions: Vec<String>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: &str, algebra: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            algebra: algebra.into(),
            order: None,
            window: None,
            checks: Vec::new(),
            conventions: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn with_order(mut self, k: usize) -> SuiteReport {
        self.order = Some(k);
        self
    }

    pub fn with_window(mut self, w: usize) -> SuiteReport {
        self.window = Some(w);
        self
    }

    pub fn convention(&mut self, c: impl Into<String>) {
        self.conventions.push(c.into());
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Fail, witness: Some(witness.into()) });
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, witness: Some(why.into()) });
    }

    /// Records the outcome of a check that returns a witness on failure.
    pub fn record(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(w) => self.fail(name, w),
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
        for c in other.conventions {
            if !self.conventions.contains(&c) {
                self.conventions.push(c);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    /// JSON form; elapsed time is left out so that output is reproducible.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| match &c.witness {
                Some(w) => json!({"name": c.name, "status": c.status.name(), "witness": w}),
                None => json!({"name": c.name, "status": c.status.name()}),
            })
            .collect();
        json!({
            "suite": self.suite,
            "algebra": self.algebra,
            "order": self.order,
            "window": self.window,
            "conventions": self.conventions,
            "checks": checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "== {} [{}]", self.suite, self.algebra);
        if let Some(k) = self.order {
            let _ = write!(out, " order={k}");
        }
        if let Some(w) = self.window {
            let _ = write!(out, " window={w}");
        }
        let _ = writeln!(out, " ({} ms)", self.elapsed_ms);
        for c in &self.conventions {
            let _ = writeln!(out, "   note: {c}");
        }
        for c in &self.checks {
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "  {:<7} {} :: {}", c.status.name(), c.name, w);
                }
                None => {
                    let _ = writeln!(out, "  {:<7} {}", c.status.name(), c.name);
                }
            }
        }
        let _ = writeln!(
            out,
            "  summary: {} pass, {} fail, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        out
    }
}

/// Header line stated in every representation-level report.
pub const REPRESENTATION_CAVEAT: &str =
    "checked in the vector representation only: a pass shows the relations hold there, not in the abstract algebra";
