use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{ScenarioConfig, SCHEMA_VERSION};
use crate::certify::CertificationReport;
use crate::error::Result;

/// The machine-readable report. Wall times are kept out of it so identical
/// runs give identical bytes; they go to the text summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub schema_version: u32,
    pub scenario: String,
    pub config_hash: String,
    pub seed: u64,
    pub hypotheses: Vec<String>,
    pub checks: Vec<CertificationReport>,
}

impl ScenarioReport {
    pub fn new(cfg: &ScenarioConfig, hypotheses: Vec<String>, checks: Vec<CertificationReport>) -> Result<Self> {
        Ok(ScenarioReport {
            schema_version: SCHEMA_VERSION,
            scenario: cfg.scenario.clone(),
            config_hash: config_hash(cfg)?,
            seed: cfg.budgets.seed,
            hypotheses,
            checks,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// SHA-256 of the config as canonical JSON (sorted keys, effective seed).
pub fn config_hash(cfg: &ScenarioConfig) -> Result<String> {
    let value = serde_json::to_value(cfg)?;
    Ok(hex::encode(Sha256::digest(serde_json::to_string(&value)?.as_bytes())))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
