//! Scenarios shipped with the binary.

use super::config::ScenarioConfig;
use crate::error::{Error, Result};

pub const BUNDLED: &[(&str, &str)] = &[
    ("selftest", include_str!("../../scenarios/selftest.json")),
    ("prop3.1-A1", include_str!("../../scenarios/prop3.1-A1.json")),
    ("prop3.2-A1", include_str!("../../scenarios/prop3.2-A1.json")),
    ("prop3.1-a0-witness", include_str!("../../scenarios/prop3.1-a0-witness.json")),
    ("lem4.1-A2", include_str!("../../scenarios/lem4.1-A2.json")),
    ("thm3.3-A1", include_str!("../../scenarios/thm3.3-A1.json")),
    ("thm4.2-A2", include_str!("../../scenarios/thm4.2-A2.json")),
    ("thm4.4-A2", include_str!("../../scenarios/thm4.4-A2.json")),
    ("thm4.6-A2", include_str!("../../scenarios/thm4.6-A2.json")),
];

pub fn bundled(name: &str) -> Option<Result<ScenarioConfig>> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| ScenarioConfig::from_json(text))
}

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// A config file path, or else a bundled scenario name.
pub fn load(arg: &str) -> Result<ScenarioConfig> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        return ScenarioConfig::from_json(&std::fs::read_to_string(path)?);
    }
    bundled(arg).unwrap_or_else(|| {
        Err(Error::Config(format!("`{arg}` is neither a config file nor a bundled scenario ({})", names().join(", "))))
    })
}
