//! Named pass/fail checks with expected and observed values.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; passes iff the rendered values are equal.
    pub fn expect_eq(&mut self, name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.checks.push(Check {
            name: name.into(),
            expected,
            actual,
            pass,
        });
        pass
    }

    pub fn expect_true(&mut self, name: impl Into<String>, actual: bool) -> bool {
        self.expect_eq(name, true, actual)
    }

    pub fn record(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// A check that could not run because an earlier step failed.
    pub fn error(&mut self, name: impl Into<String>, expected: impl fmt::Display, err: impl fmt::Display) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: format!("error: {err}"),
            pass: false,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.pass {
                writeln!(f, "PASS  {}: {}", c.name, c.actual)?;
            } else {
                writeln!(f, "FAIL  {}: expected {}, got {}", c.name, c.expected, c.actual)?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            writeln!(f, "overall: PASS ({} checks)", self.checks.len())
        } else {
            writeln!(f, "overall: FAIL ({failed} of {} checks failed)", self.checks.len())
        }
    }
}
