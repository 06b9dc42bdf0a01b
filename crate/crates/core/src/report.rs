use std::fmt;

use serde::{Deserialize, Serialize};

/// One check inside a verification run. Canonical forms of both sides are kept
/// only when the check fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    /// The statement the suite verifies.
    pub statement: String,
    pub entries: Vec<ReportEntry>,
    /// Elapsed time; left out of JSON so that reports are byte-identical per seed.
    #[serde(skip)]
    pub wall_time_ms: Option<u128>,
}

impl VerificationReport {
    pub fn new(suite: &str, statement: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            statement: statement.to_string(),
            entries: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn check(&mut self, id: impl Into<String>, pass: bool) {
        self.entries.push(ReportEntry { id: id.into(), pass, lhs: None, rhs: None, detail: None });
    }

    /// Records an equality check; both sides are stored on failure.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, id: impl Into<String>, lhs: &T, rhs: &T) {
        let pass = lhs == rhs;
        self.entries.push(ReportEntry {
            id: id.into(),
            pass,
            lhs: (!pass).then(|| lhs.to_string()),
            rhs: (!pass).then(|| rhs.to_string()),
            detail: None,
        });
    }

    pub fn fail(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.entries.push(ReportEntry {
            id: id.into(),
            pass: false,
            lhs: None,
            rhs: None,
            detail: Some(detail.into()),
        });
    }

    pub fn push(&mut self, entry: ReportEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    /// A report passes when it has entries and all of them pass.
    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{} [{}] {}", verdict, self.suite, self.statement)?;
        for e in &self.entries {
            write!(f, "  {} {}", if e.pass { "ok  " } else { "FAIL" }, e.id)?;
            if let Some(d) = &e.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
            if let (Some(l), Some(r)) = (&e.lhs, &e.rhs) {
                writeln!(f, "       lhs = {l}")?;
                writeln!(f, "       rhs = {r}")?;
            }
        }
        if let Some(ms) = self.wall_time_ms {
            writeln!(f, "  ({ms} ms)")?;
        }
        Ok(())
    }
}
