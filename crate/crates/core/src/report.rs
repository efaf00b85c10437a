//! Per-case verification outcomes shared by every suite.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// Exact agreement through `depth` (free-form, e.g. `"q^100"`).
    Pass { depth: String },
    Fail {
        location: String,
        expected: String,
        got: String,
    },
    Skipped { reason: String },
}

impl Status {
    pub fn pass(depth: impl Into<String>) -> Self {
        Status::Pass {
            depth: depth.into(),
        }
    }

    pub fn fail(
        location: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
    ) -> Self {
        Status::Fail {
            location: location.into(),
            expected: expected.into(),
            got: got.into(),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Status::Skipped {
            reason: reason.into(),
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass { .. } => "pass",
            Status::Fail { .. } => "fail",
            Status::Skipped { .. } => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass { depth } => write!(f, "pass ({depth})"),
            Status::Fail {
                location,
                expected,
                got,
            } => write!(f, "FAIL at {location}: expected {expected}, got {got}"),
            Status::Skipped { reason } => write!(f, "skipped ({reason})"),
        }
    }
}

/// One checked case. `detail` carries extra findings such as a fitted
/// constant; it never affects pass/fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub suite: String,
    pub key: String,
    pub status: Status,
    pub detail: String,
}

impl Case {
    pub fn new(suite: &str, key: impl Into<String>, status: Status) -> Self {
        Case {
            suite: suite.to_string(),
            key: key.into(),
            status,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// An ordered collection of cases from one or more suites.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub cases: Vec<Case>,
}

impl Report {
    pub fn push(&mut self, c: Case) {
        self.cases.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.status.is_fail()).count()
    }

    pub fn passes(&self) -> usize {
        self.cases.iter().filter(|c| c.status.is_pass()).count()
    }

    pub fn skips(&self) -> usize {
        self.cases.len() - self.failures() - self.passes()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    /// Human-readable rendering, one line per case plus a summary.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("[{}] {}: {}", c.suite, c.key, c.status));
            if !c.detail.is_empty() {
                out.push_str(&format!("  -- {}", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.passes(),
            self.failures(),
            self.skips()
        ));
        out
    }

    /// One JSON object per line (keys sorted), for machine consumption.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let mut obj = serde_json::Map::new();
            obj.insert("suite".into(), c.suite.clone().into());
            obj.insert("case".into(), c.key.clone().into());
            obj.insert("status".into(), c.status.label().into());
            match &c.status {
                Status::Pass { depth } => {
                    obj.insert("depth".into(), depth.clone().into());
                }
                Status::Fail {
                    location,
                    expected,
                    got,
                } => {
                    obj.insert("location".into(), location.clone().into());
                    obj.insert("expected".into(), expected.clone().into());
                    obj.insert("got".into(), got.clone().into());
                }
                Status::Skipped { reason } => {
                    obj.insert("reason".into(), reason.clone().into());
                }
            }
            if !c.detail.is_empty() {
                obj.insert("detail".into(), c.detail.clone().into());
            }
            out.push_str(&serde_json::Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }
}
