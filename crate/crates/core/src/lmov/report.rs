use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

/// Most witnesses kept per check.
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// An offending key and the exact residual there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub key: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub witness: Vec<Witness>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, serde_json::Value>,
    #[serde(skip)]
    failures: usize,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), status: Status::Pass, witness: Vec::new(), info: BTreeMap::new(), failures: 0 }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn fail(&mut self, key: impl Display, residual: impl Display) {
        self.status = Status::Fail;
        self.failures += 1;
        if self.witness.len() < MAX_WITNESSES {
            self.witness.push(Witness { key: key.to_string(), residual: residual.to_string() });
        }
    }

    /// Records a failure when `ok` is false.
    pub fn expect(&mut self, ok: bool, key: impl Display, residual: impl Display) {
        if !ok {
            self.fail(key, residual);
        }
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.info.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    /// Folds another run of the same check into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        if !other.passed() {
            self.status = Status::Fail;
        }
        self.failures += other.failures;
        for w in other.witness {
            if self.witness.len() < MAX_WITNESSES {
                self.witness.push(w);
            }
        }
    }
}

/// Every report of a run, in a fixed order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub link: String,
    pub cap: Vec<usize>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failed(&self) -> Vec<&CheckReport> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("{status:4}  {}", c.name));
            if let Some(w) = c.witness.first() {
                out.push_str(&format!("  at {}: {}", w.key, w.residual));
            }
            out.push('\n');
        }
        out
    }
}
