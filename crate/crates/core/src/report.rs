//! Shared pass/fail reporting for the axiom checkers. A report lists every
//! relation family that was exercised with its trial count, and carries the
//! first witness of any violation.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub relation: String,
    pub trials: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> CheckReport {
        CheckReport {
            subject: subject.into(),
            items: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.failures == 0)
    }

    pub fn first_witness(&self) -> Option<&str> {
        self.items
            .iter()
            .find_map(|i| i.witness.as_deref())
    }

    /// Record the outcome of one relation family.
    pub fn record(&mut self, relation: &str, trials: usize, failures: usize, witness: Option<String>) {
        self.items.push(CheckItem {
            relation: relation.to_string(),
            trials,
            failures,
            witness,
        });
    }

    /// Run a batch of boolean trials under one relation name; the witness
    /// printer is called on the first failing index.
    pub fn run<F, W>(&mut self, relation: &str, count: usize, mut trial: F, mut witness: W)
    where
        F: FnMut(usize) -> bool,
        W: FnMut(usize) -> String,
    {
        let mut failures = 0;
        let mut first = None;
        for i in 0..count {
            if !trial(i) {
                failures += 1;
                if first.is_none() {
                    first = Some(witness(i));
                }
            }
        }
        self.record(relation, count, failures, first);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check {}: {}", self.subject, if self.passed() { "pass" } else { "FAIL" })?;
        for item in &self.items {
            write!(
                f,
                "  {:<24} {}/{} ok",
                item.relation,
                item.trials - item.failures,
                item.trials
            )?;
            if let Some(w) = &item.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
