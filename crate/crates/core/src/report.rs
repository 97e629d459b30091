//! Structured verification reports.
//!
//! Every verifier in the crate returns a [`CheckReport`]: a list of named
//! checks, each carrying the largest residual observed and the tolerance it
//! was held to. A failed check is a report outcome, never an error.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a residual check: passes iff `residual <= tol` (NaN fails).
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: f64) -> bool {
        let passed = residual <= tol;
        self.checks.push(Check {
            name: name.into(),
            residual,
            tol,
            passed,
            detail: None,
        });
        passed
    }

    pub fn push_with_detail(
        &mut self,
        name: impl Into<String>,
        residual: f64,
        tol: f64,
        detail: impl Into<String>,
    ) -> bool {
        let passed = self.push(name, residual, tol);
        if let Some(last) = self.checks.last_mut() {
            last.detail = Some(detail.into());
        }
        passed
    }

    /// Records a yes/no check; residual is 0 on pass and 1 on failure.
    pub fn push_flag(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> bool {
        let residual = if ok { 0.0 } else { 1.0 };
        self.push_with_detail(name, residual, 0.0, detail)
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            write!(
                f,
                "  [{}] {:<width$}  residual {:>10.3e}  tol {:.1e}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.residual,
                c.tol,
            )?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
