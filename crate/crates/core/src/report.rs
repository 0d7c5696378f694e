//! Report-style results shared by all validators.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub location: String,
    pub message: String,
}

/// Ordered list of findings. An empty report is a pass.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: &str, location: impl fmt::Display, message: impl Into<String>) {
        self.findings.push(Finding {
            check: check.to_string(),
            location: location.to_string(),
            message: message.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.findings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has(&self, check: &str) -> bool {
        self.findings.iter().any(|f| f.check == check)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.passed(),
            "findings": self.findings,
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "pass");
        }
        writeln!(f, "FAIL ({} findings)", self.findings.len())?;
        for x in &self.findings {
            writeln!(f, "  [{}] {}: {}", x.check, x.location, x.message)?;
        }
        Ok(())
    }
}
