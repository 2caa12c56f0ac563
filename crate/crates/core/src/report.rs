//! Validation reports shared by every checker in the crate.
//!
//! A report separates *structural* problems (dangling ids, tables of the
//! wrong shape, ill-typed constraint arrows) from *axiom* checks. Every
//! axiom check is always listed, passing or not, so that a report names
//! each property it examined.

use serde::Serialize;

/// Maximum number of witnesses retained per check. The violation count is
/// still exact.
pub const WITNESS_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub violations: usize,
    pub witnesses: Vec<Vec<String>>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn fail<I, S>(&mut self, witness: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses
                .push(witness.into_iter().map(Into::into).collect());
        }
    }

    /// Records a failure when `ok` is false.
    pub fn expect<I, S>(&mut self, ok: bool, witness: impl FnOnce() -> I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn has_witness(&self, witness: &[&str]) -> bool {
        self.witnesses
            .iter()
            .any(|w| w.iter().map(String::as_str).eq(witness.iter().copied()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub structural: Vec<String>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn structural(errors: Vec<String>) -> Self {
        ValidationReport {
            structural: errors,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        self.structural.extend(
            other
                .structural
                .into_iter()
                .map(|s| format!("{prefix}: {s}")),
        );
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }

    pub fn is_structurally_sound(&self) -> bool {
        self.structural.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
