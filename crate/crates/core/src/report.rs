//! Pass/fail reports produced by the runtime checks.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.title.clone();
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}: {}", c.name), ..c });
        }
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {tag} {}", c.name)?;
            } else {
                writeln!(f, "  {tag} {}: {}", c.name, c.detail)?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "  WARN {w}")?;
        }
        Ok(())
    }
}
