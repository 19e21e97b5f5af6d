//! Pass/fail reports produced by the law checkers and measure validation.

use std::fmt;

/// Outcome of one named check over any number of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one case of check `name`. `detail` is only evaluated for the
    /// first failure of that check.
    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(idx) => idx,
            None => {
                self.checks.push(Check {
                    name: name.to_string(),
                    cases: 0,
                    failures: 0,
                    counterexample: None,
                });
                self.checks.len() - 1
            }
        };
        let check = &mut self.checks[idx];
        check.cases += 1;
        if !ok {
            check.failures += 1;
            if check.counterexample.is_none() {
                check.counterexample = Some(detail());
            }
        }
    }

    /// Registers `name` with zero cases so it shows up even if vacuous.
    pub fn declare(&mut self, name: &str) {
        if !self.checks.iter().any(|c| c.name == name) {
            self.checks.push(Check {
                name: name.to_string(),
                cases: 0,
                failures: 0,
                counterexample: None,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            match self.checks.iter_mut().find(|mine| mine.name == c.name) {
                Some(mine) => {
                    mine.cases += c.cases;
                    mine.failures += c.failures;
                    if mine.counterexample.is_none() {
                        mine.counterexample = c.counterexample;
                    }
                }
                None => self.checks.push(c),
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS {} ({} cases)", c.name, c.cases)?;
            } else {
                writeln!(
                    f,
                    "FAIL {} ({} of {} cases): {}",
                    c.name,
                    c.failures,
                    c.cases,
                    c.counterexample.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    }
}
