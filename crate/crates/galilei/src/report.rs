//! Verification records, rendered as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds, but the derived value deviates from the printed one in an
    /// exactly predicted way; `note` states the deviation.
    Documented,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Documented => "DOCUMENTED",
        }
    }

    pub fn from_ok(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    /// The structure or printed formula the check is measured against.
    pub target: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Record {
    pub fn new(check: impl Into<String>, target: impl Into<String>, status: Status) -> Self {
        Record {
            check: check.into(),
            target: target.into(),
            status,
            degree: None,
            witness: None,
            note: None,
            wall_ms: None,
        }
    }

    pub fn with_status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }

    pub fn degree(mut self, d: Option<u32>) -> Self {
        self.degree = d;
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub subject: String,
    pub degree: u32,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(subject: impl Into<String>, degree: u32) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            subject: subject.into(),
            degree,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn find(&self, check: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check == check)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report for {} at degree {}", self.subject, self.degree);
        let width = self.records.iter().map(|r| r.check.len()).max().unwrap_or(0);
        for r in &self.records {
            let _ = write!(
                out,
                "{:<10} {:<width$}  {}",
                r.status.label(),
                r.check,
                r.target
            );
            if let Some(d) = r.degree {
                let _ = write!(out, "  [N={d}]");
            }
            if let Some(ms) = r.wall_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
            if let Some(n) = &r.note {
                let _ = writeln!(out, "{:10} note: {n}", "");
            }
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "{:10} witness: {w}", "");
            }
        }
        let _ = writeln!(
            out,
            "{} pass, {} documented, {} fail",
            self.count(Status::Pass),
            self.count(Status::Documented),
            self.count(Status::Fail)
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
