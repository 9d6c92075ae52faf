//! Structured run records written next to CSV outputs.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    /// Hex digest of the canonical configuration text.
    pub config_hash: String,
    pub config: Value,
    pub cutoffs: Value,
    pub results: Value,
}

impl RunRecord {
    pub fn new(command: &str, config_hash: &str, config: Value, cutoffs: Value, results: Value) -> Self {
        Self { command: command.to_owned(), config_hash: config_hash.to_owned(), config, cutoffs, results }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run records serialize")
    }
}
