//! Run configuration and the reproducibility header written at the top of
//! every output.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Command;

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tool: &'static str,
    pub version: &'static str,
    pub jobs: Option<usize>,
    pub verbosity: u8,
    /// The subcommand with every argument, defaults included.
    pub command: serde_json::Value,
}

impl RunConfig {
    pub fn new(command: &Command, jobs: Option<usize>, verbosity: u8) -> RunConfig {
        RunConfig {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            jobs,
            verbosity,
            command: serde_json::to_value(command).expect("arguments serialize"),
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    format!("{:x}", Sha256::digest(data))
}

/// Comment lines for the top of a CSV file.
pub fn csv_header(config: &RunConfig, input_digest: &str) -> String {
    format!("# {} {}\n# config: {}\n# input-sha256: {}\n", config.tool, config.version, config.json(), input_digest)
}

/// Header record for JSON outputs.
pub fn json_header(config: &RunConfig, input_digest: &str) -> serde_json::Value {
    serde_json::json!({ "degen4": { "config": config, "input_sha256": input_digest } })
}
