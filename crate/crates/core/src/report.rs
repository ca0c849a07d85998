//! Pass/fail records for verification suites.

use std::fmt;

use serde_json::{json, Value as Json};

/// One verified identity: a descriptive anchor, the number of instances
/// tried, and the failures found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub anchor: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(anchor: impl Into<String>) -> Self {
        Self {
            anchor: anchor.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Records one instance.
    pub fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(case());
        }
    }

    /// Records an instance whose evaluation may itself fail.
    pub fn record_result<E: fmt::Display>(
        &mut self,
        r: std::result::Result<bool, E>,
        case: impl FnOnce() -> String,
    ) {
        match r {
            Ok(ok) => self.record(ok, case),
            Err(e) => self.record(false, || format!("{}: {e}", case())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

/// Checks grouped under a suite name, plus free-form notes (recorded
/// discrepancies that are not failures).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "anchor": c.anchor,
                "cases": c.cases,
                "passed": c.passed(),
                "failures": c.failures.iter().take(20).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {} ({} cases)",
                if c.passed() { "ok" } else { "FAIL" },
                c.anchor,
                c.cases
            )?;
            for e in c.failures.iter().take(5) {
                writeln!(f, "      {e}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_check_is_not_a_pass() {
        let mut c = Check::new("x");
        assert!(!c.passed());
        c.record(true, String::new);
        assert!(c.passed());
        c.record_result::<String>(Err("boom".into()), || "case 2".into());
        assert_eq!(c.failures, vec!["case 2: boom".to_string()]);
    }
}
