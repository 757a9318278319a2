use chernlab::LedgerEntry;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::Config;
use crate::ringfile::RingFile;

/// A typed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "kebab-case")]
pub enum Value {
    Integer(i64),
    Boolean(bool),
    IntegerList(Vec<i64>),
    /// `null` entries are infinite.
    LengthList(Vec<Option<u64>>),
    Text(String),
    TextList(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub name: String,
    /// Library operation that produced the value.
    pub op: String,
    #[serde(flatten)]
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInfo {
    pub name: String,
    pub characteristic: u64,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    /// SHA-256 of the ring file, the command and the resolved config.
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ring: RingInfo,
    pub command: String,
    pub config: Config,
    pub values: Vec<ValueEntry>,
    pub ledger: Vec<LedgerEntry>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(file: &RingFile, command: &str, config: Config) -> Self {
        let provenance = Provenance {
            tool: "chernlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: config.seed,
            config_hash: config_hash(file, command, &config),
        };
        Report {
            ring: RingInfo {
                name: file.name.clone(),
                characteristic: file.characteristic,
                vars: file.vars.clone(),
                weights: file.weights.clone(),
                relations: file.relations.clone(),
            },
            command: command.to_string(),
            config,
            values: Vec::new(),
            ledger: Vec::new(),
            provenance,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, op: &str, value: Value) {
        self.values.push(ValueEntry {
            name: name.into(),
            op: op.to_string(),
            value,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.iter().find(|v| v.name == name).map(|v| &v.value)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn config_hash(file: &RingFile, command: &str, config: &Config) -> String {
    let mut h = Sha256::new();
    h.update(file.source.as_bytes());
    h.update([0]);
    h.update(command.as_bytes());
    h.update([0]);
    h.update(serde_json::to_vec(config).expect("configs serialize"));
    hex::encode(h.finalize())
}
