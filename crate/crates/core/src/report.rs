//! Axiom-violation reports shared by every checker.

use std::fmt;

/// A failing instance of a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Basis or element indices at which the law fails.
    pub witness: Vec<usize>,
    pub detail: String,
}

/// Outcome of one law over all of its configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub axiom: String,
    pub cases: u64,
    pub violations: Vec<Violation>,
    /// Recorded checks are reported but do not decide pass/fail.
    pub recorded: bool,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl StructureReport {
    pub fn new(subject: impl Into<String>) -> Self {
        StructureReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Opens a new check and returns a recorder for it.
    pub fn check(&mut self, axiom: impl Into<String>) -> Recorder<'_> {
        self.open(axiom.into(), false)
    }

    /// Opens a check whose failures are recorded without failing the report.
    pub fn record(&mut self, axiom: impl Into<String>) -> Recorder<'_> {
        self.open(axiom.into(), true)
    }

    fn open(&mut self, axiom: String, recorded: bool) -> Recorder<'_> {
        self.checks.push(Check {
            axiom,
            cases: 0,
            violations: Vec::new(),
            recorded,
        });
        Recorder {
            check: self.checks.last_mut().unwrap(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(|c| c.recorded || c.passed())
    }

    /// Number of violations in non-recorded checks.
    pub fn violation_count(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| !c.recorded)
            .map(|c| c.violations.len())
            .sum()
    }

    pub fn find(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    /// Violations reported under `axiom` (empty if the tag is absent).
    pub fn violations_of(&self, axiom: &str) -> &[Violation] {
        self.find(axiom).map(|c| c.violations.as_slice()).unwrap_or(&[])
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.recorded && !c.passed())
            .map(|c| c.axiom.as_str())
            .collect()
    }

    /// Appends the checks of `other`, prefixing their tags.
    pub fn absorb(&mut self, prefix: &str, other: StructureReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.axiom = format!("{prefix}{}", c.axiom);
            }
            self.checks.push(c);
        }
    }

    /// Restriction to one tag, for re-running a single law.
    pub fn only(&self, axiom: &str) -> StructureReport {
        StructureReport {
            subject: self.subject.clone(),
            checks: self
                .checks
                .iter()
                .filter(|c| c.axiom == axiom)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.violations.is_empty() {
                writeln!(f, "PASS axiom={} cases={}", c.axiom, c.cases)?;
            } else if c.recorded {
                writeln!(
                    f,
                    "NOTE axiom={} cases={} violations={}",
                    c.axiom,
                    c.cases,
                    c.violations.len()
                )?;
            } else {
                for v in &c.violations {
                    writeln!(
                        f,
                        "FAIL axiom={} witness={} {}",
                        c.axiom,
                        join(&v.witness),
                        v.detail
                    )?;
                }
            }
        }
        let n = self.violation_count();
        if n == 0 {
            writeln!(f, "PASS 0 violations")
        } else {
            writeln!(f, "FAIL {n} violations")
        }
    }
}

pub(crate) fn join(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Mutable handle on the check currently being filled.
pub struct Recorder<'a> {
    check: &'a mut Check,
}

impl Recorder<'_> {
    /// Counts one configuration; records a violation when `ok` is false.
    pub fn case(&mut self, ok: bool, witness: &[usize], detail: impl FnOnce() -> String) {
        self.check.cases += 1;
        if !ok {
            self.check.violations.push(Violation {
                witness: witness.to_vec(),
                detail: detail(),
            });
        }
    }

    /// Equality case with a generic detail message.
    pub fn eq<T: PartialEq + fmt::Debug>(&mut self, lhs: T, rhs: T, witness: &[usize]) {
        let ok = lhs == rhs;
        self.case(ok, witness, || format!("lhs={lhs:?} rhs={rhs:?}"));
    }

    /// Equality of possibly undefined indices; two undefined sides fail too.
    pub fn eq_idx(&mut self, lhs: Option<usize>, rhs: Option<usize>, witness: &[usize]) {
        let ok = lhs.is_some() && lhs == rhs;
        self.case(ok, witness, || {
            format!("lhs={} rhs={}", show_idx(lhs), show_idx(rhs))
        });
    }
}

pub(crate) fn show_idx(i: Option<usize>) -> String {
    match i {
        Some(i) => i.to_string(),
        None => "undefined".to_string(),
    }
}
