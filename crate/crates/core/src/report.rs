use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded ground truth that is not a pass/fail statement.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// An ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, check: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn info(&mut self, check: impl Into<String>, note: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.into(),
            status: Status::Info,
            witness: Some(note.into()),
        });
    }

    /// Record pass or fail; the witness closure only runs on failure.
    pub fn record(&mut self, check: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(check);
        } else {
            self.fail(check, witness());
        }
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
