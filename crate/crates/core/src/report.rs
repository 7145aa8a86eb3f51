use std::fmt;

use serde::Serialize;

/// One verified identity. `witness` carries the nonzero normal form when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: &str, subject: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            subject: subject.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, subject: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            subject: subject.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    /// Records a check from the remainder of a membership test.
    pub fn zero(&mut self, name: &str, subject: impl Into<String>, remainder: &crate::ring::Poly) {
        if remainder.is_zero() {
            self.pass(name, subject);
        } else {
            self.fail(name, subject, remainder.to_string());
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failed(&self, name: &str) -> bool {
        self.failures().any(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{mark} {} [{}]", c.name, c.subject)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
