//! Uniform pass/fail records shared by every audit.

use serde::Serialize;

use crate::herm::HermMat;

/// Version tag of the JSON output format.
pub const SCHEMA: &str = "qcskit/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    /// Largest violation seen; zero when nothing was violated.
    pub residual: f64,
    pub witness: Option<HermMat>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, pass: bool, residual: f64) -> Self {
        CheckReport {
            check: check.into(),
            pass,
            residual,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: HermMat) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Accumulates a residual and the first counterexample over a sampled check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub trials: usize,
    pub failures: usize,
    pub residual: f64,
    pub witness: Option<HermMat>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, residual: f64, witness: impl FnOnce() -> HermMat) {
        self.trials += 1;
        self.residual = self.residual.max(residual);
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn into_report(self, check: impl Into<String>) -> CheckReport {
        let mut r = CheckReport::new(check, self.failures == 0, self.residual)
            .with_note(format!("{} trials, {} failures", self.trials, self.failures));
        r.witness = self.witness;
        r
    }
}
