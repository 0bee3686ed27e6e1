//! Versioned envelope around every machine-readable result.

use serde::{Deserialize, Serialize};

/// Bumped on any incompatible change to report layouts.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub tool_version: String,
    pub run_config: serde_json::Value,
    /// Registry slugs the result relies on.
    pub citations: Vec<String>,
    /// Node counts per phase, in execution order.
    pub nodes: Vec<(String, u64)>,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(run_config: serde_json::Value, result: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            run_config,
            citations: Vec::new(),
            nodes: Vec::new(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
