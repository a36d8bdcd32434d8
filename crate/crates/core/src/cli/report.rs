use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunOutcome {
    Ok,
    Violations,
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunOutcome::Ok => "ok",
            RunOutcome::Violations => "violations",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub samples: u64,
    pub violations: u64,
    #[serde(default)]
    pub skipped: u64,
}

/// Per-family tally of an orbit-soundness run. `skipped` counts trials for
/// which no admissible parameters were drawn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCount {
    pub family: String,
    pub samples: u64,
    pub passed: u64,
    pub skipped: u64,
}

impl FamilyCount {
    pub fn new(family: String) -> Self {
        FamilyCount {
            family,
            samples: 0,
            passed: 0,
            skipped: 0,
        }
    }
}

/// Outcome of `verify` and `orbit-test`. `outcome` is `ok` iff
/// `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub outcome: RunOutcome,
    pub seed: Option<u64>,
    pub counters: Counters,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyCount>,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: Option<u64>) -> Self {
        RunReport {
            command,
            outcome: RunOutcome::Ok,
            seed,
            counters: Counters::default(),
            families: Vec::new(),
            violations: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Counts one sample, failing if `violation` is set.
    pub fn record(&mut self, violation: Option<String>) {
        self.counters.samples += 1;
        if let Some(v) = violation {
            self.counters.violations += 1;
            self.violations.push(v);
        }
    }

    pub fn finish(&mut self) {
        self.outcome = if self.violations.is_empty() {
            RunOutcome::Ok
        } else {
            RunOutcome::Violations
        };
    }
}
