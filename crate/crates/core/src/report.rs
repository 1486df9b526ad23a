//! Check results and their JSON reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// residual ≤ tolerance
    Bound,
    /// residual ≥ tolerance
    Floor,
    /// Reported only.
    Info,
}

/// JSON has no infinities or NaN; both become the largest finite double.
fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else if x == f64::NEG_INFINITY {
        f64::MIN
    } else {
        f64::MAX
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn bound(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        let residual = finite(residual.abs());
        Check {
            name: name.into(),
            kind: CheckKind::Bound,
            residual,
            tolerance,
            pass: residual <= tolerance,
            note: None,
        }
    }

    pub fn exact(name: impl Into<String>, residual: f64) -> Self {
        Self::bound(name, residual, 0.0)
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::exact(name, if ok { 0.0 } else { 1.0 })
    }

    pub fn floor(name: impl Into<String>, value: f64, minimum: f64) -> Self {
        let pass = value.is_finite() && value >= minimum;
        Check {
            name: name.into(),
            kind: CheckKind::Floor,
            residual: finite(value),
            tolerance: minimum,
            pass,
            note: None,
        }
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Info,
            residual: finite(value),
            tolerance: 0.0,
            pass: true,
            note: None,
        }
    }

    pub fn failed(name: impl Into<String>, message: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Bound,
            residual: f64::MAX,
            tolerance: 0.0,
            pass: false,
            note: Some(message.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.into(), checks, pass }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl Report {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Report { seed, suites, pass }
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
