//! Verification report rows, written as JSON Lines.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::case::CaseId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One row per `(case, check)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `C3-l2`, `F4-l2`, … or `left~right` for equivalence searches.
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub check: String,
    pub status: Status,
    pub metrics: Map<String, Value>,
    /// Identifier of the statement the row verifies.
    pub provenance: String,
}

impl VerificationReport {
    pub fn for_case(case: &CaseId, check: &str, provenance: &str) -> Self {
        VerificationReport {
            case: case.to_string(),
            family: Some(format!("{:?}", case.family)),
            rank: Some(case.rank),
            level: Some(case.level),
            check: check.to_string(),
            status: Status::Pass,
            metrics: Map::new(),
            provenance: provenance.to_string(),
        }
    }

    pub fn named(case: &str, check: &str, provenance: &str) -> Self {
        VerificationReport {
            case: case.to_string(),
            family: None,
            rank: None,
            level: None,
            check: check.to_string(),
            status: Status::Pass,
            metrics: Map::new(),
            provenance: provenance.to_string(),
        }
    }

    pub fn metric(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    /// Fail the row unless `ok`.
    pub fn require(mut self, ok: bool) -> Self {
        if !ok {
            self.status = Status::Fail;
        }
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Rows as JSON Lines.
pub fn write_jsonl<W: Write>(mut out: W, rows: &[VerificationReport]) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// The conjunction of the row statuses: true iff every row passed.
pub fn all_passed(rows: &[VerificationReport]) -> bool {
    rows.iter().all(|r| r.status == Status::Pass)
}
