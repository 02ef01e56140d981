//! Validation reports: lists of failed checks with witnesses.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one check; a failing check stores its witness.
    pub fn check(&mut self, ok: bool, check: impl Into<String>, witness: impl FnOnce() -> String) {
        self.checks_run += 1;
        if !ok {
            self.failures.push(Failure { check: check.into(), witness: witness() });
        }
    }

    pub fn pass(&mut self) {
        self.checks_run += 1;
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.checks_run += 1;
        self.failures.push(Failure { check: check.into(), witness: witness.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report in, prefixing its check names.
    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        self.checks_run += other.checks_run;
        for f in other.failures {
            self.failures.push(Failure { check: format!("{prefix}: {}", f.check), witness: f.witness });
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn first_witness(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}]", self.check, self.witness)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.failures.first() {
            None => write!(f, "{}: {} checks passed", self.subject, self.checks_run),
            Some(x) => write!(f, "{}: {} of {} checks failed, first: {x}", self.subject, self.failures.len(), self.checks_run),
        }
    }
}
