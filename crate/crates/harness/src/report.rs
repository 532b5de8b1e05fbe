//! Report and witness types, serialized as JSON with a fixed key order.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::recipe::Recipe;
use crate::suite::{Config, Suite};

pub const REPORT_VERSION: u32 = 1;

/// A replayable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Recipe>,
    /// Coefficient vectors of ring elements (finite tier).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<Vec<i64>>,
    /// Lengths of consecutive runs of `elements` when they describe several
    /// generator lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<usize>,
    /// Elements of the symbolic tiers in text form.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbolic: Vec<String>,
    pub detail: String,
}

impl Witness {
    pub fn grouped(mut self, groups: Vec<usize>) -> Witness {
        self.groups = groups;
        self
    }

    /// `elements` split according to `groups` (one group if none recorded).
    pub fn element_groups(&self) -> Vec<&[Vec<i64>]> {
        runs(&self.elements, &self.groups)
    }

    /// `symbolic` split according to `groups`.
    pub fn symbolic_groups(&self) -> Vec<&[String]> {
        runs(&self.symbolic, &self.groups)
    }

    pub fn finite(check: &str, ring: &Recipe, elements: Vec<Vec<i64>>, detail: String) -> Witness {
        Witness {
            check: check.to_string(),
            ring: Some(ring.clone()),
            elements,
            groups: Vec::new(),
            symbolic: Vec::new(),
            detail,
        }
    }

    pub fn symbolic(check: &str, symbolic: Vec<String>, detail: String) -> Witness {
        Witness {
            check: check.to_string(),
            ring: None,
            elements: Vec::new(),
            groups: Vec::new(),
            symbolic,
            detail,
        }
    }
}

fn runs<'a, T>(items: &'a [T], groups: &[usize]) -> Vec<&'a [T]> {
    if groups.is_empty() {
        return vec![items];
    }
    let mut out = Vec::new();
    let mut start = 0;
    for &g in groups {
        let end = (start + g).min(items.len());
        out.push(&items[start..end]);
        start = end;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegistryStatus {
    Standard,
    /// Recorded but never fails the run.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Status {
    Confirmed,
    Counterexample { witness: Witness },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub check: String,
    pub anchor: String,
    pub registry_status: RegistryStatus,
    pub status: Status,
    pub instances_run: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<String>,
}

impl CheckReport {
    pub fn is_confirmed(&self) -> bool {
        self.status == Status::Confirmed
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            Status::Counterexample { witness } => Some(witness),
            _ => None,
        }
    }

    /// A counterexample on a check that is not open.
    pub fn is_failure(&self) -> bool {
        self.registry_status == RegistryStatus::Standard && self.witness().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub version: u32,
    pub seed: u64,
    pub config_digest: String,
    pub reports: Vec<CheckReport>,
}

impl ReportFile {
    pub fn new(seed: u64, config: &Config, suite: &Suite, reports: Vec<CheckReport>) -> ReportFile {
        ReportFile {
            version: REPORT_VERSION,
            seed,
            config_digest: config_digest(config, suite),
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> anyhow::Result<ReportFile> {
        let r: ReportFile = serde_json::from_str(s)?;
        anyhow::ensure!(r.version == REPORT_VERSION, "unsupported report version {}", r.version);
        Ok(r)
    }

    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(CheckReport::is_failure) {
            2
        } else {
            0
        }
    }
}

/// sha256 of the config and the instance recipes, as JSON.
pub fn config_digest(config: &Config, suite: &Suite) -> String {
    let recipes: Vec<&Recipe> = suite.instances.iter().map(|i| &i.recipe).collect();
    let bytes = serde_json::to_vec(&(config, recipes)).expect("config serializes");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let rep = CheckReport {
            check: "x".into(),
            anchor: "a".into(),
            registry_status: RegistryStatus::Open,
            status: Status::Counterexample {
                witness: Witness::finite("x", &Recipe::zmod(4), vec![vec![2]], "d".into()),
            },
            instances_run: 3,
            evidence: vec![],
        };
        let suite = Suite { instances: vec![] };
        let file = ReportFile::new(7, &Config::default(), &suite, vec![rep]);
        assert_eq!(ReportFile::from_json(&file.to_json()).unwrap(), file);
        assert_eq!(file.exit_code(), 0);
        assert_eq!(file.config_digest.len(), 64);
    }
}
