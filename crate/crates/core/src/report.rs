//! Uniform result carrier for the lemma-level checks. Everything is ordered
//! deterministically so reports serialize byte-identically across runs.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaStatus {
    Pass,
    Fail,
    Skipped,
}

impl LemmaStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaStatus::Pass => "pass",
            LemmaStatus::Fail => "fail",
            LemmaStatus::Skipped => "skipped",
        }
    }
}

/// Outcome of one verified statement: status, check counters, and the first
/// counterexample witness when the check failed.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub name: String,
    pub status: LemmaStatus,
    pub counts: BTreeMap<String, u64>,
    pub witness: Option<String>,
}

impl LemmaReport {
    pub fn pass(name: &str) -> Self {
        LemmaReport {
            name: name.to_string(),
            status: LemmaStatus::Pass,
            counts: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn count(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += n;
    }

    pub fn fail(&mut self, witness: String) {
        // keep the first witness; later violations only bump counters
        if self.status != LemmaStatus::Fail {
            self.status = LemmaStatus::Fail;
            self.witness = Some(witness);
        }
        self.count("violations", 1);
    }

    pub fn passed(&self) -> bool {
        self.status == LemmaStatus::Pass
    }
}
