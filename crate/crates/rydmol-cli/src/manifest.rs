//! Run manifests: provenance sufficient to reproduce a data file
//! byte-for-byte. The hash covers the fully resolved inputs, so the same
//! effective parameters hash identically however they were supplied.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_sha256: String,
    pub constants_version: String,
    pub species_version: String,
    pub module_versions: ModuleVersions,
    pub seed: Option<u64>,
    pub wall_clock_unix_ms: u128,
    pub resolved_config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputRecord>,
}

#[derive(Debug, Serialize)]
pub struct ModuleVersions {
    pub rydmol: String,
    pub rydmol_cli: String,
}

/// Filled in by the writer once the data bytes exist.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub path: String,
    pub format: String,
    pub precision: usize,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    /// `resolved` must be the fully resolved inputs of the run; serde_json
    /// maps are ordered, so its string form is canonical.
    pub fn new(command: &str, resolved: Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.to_string(),
            config_sha256: sha256_hex(resolved.to_string().as_bytes()),
            constants_version: rydmol::constants::CONSTANTS_VERSION.to_string(),
            species_version: rydmol::species::builtin().version.clone(),
            module_versions: ModuleVersions {
                rydmol: rydmol::VERSION.to_string(),
                rydmol_cli: env!("CARGO_PKG_VERSION").to_string(),
            },
            seed,
            wall_clock_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            resolved_config: resolved,
            output: None,
        }
    }
}
