use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certify::{Budgets, Verdict};
use crate::error::{Error, Result};
use crate::modules::ModuleDescriptor;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Whittaker,
    Torsion,
    Descent,
    Probe,
    ChargeZeroWitness,
    AlgebraSelftest,
    FaultInjection,
}

impl CheckName {
    pub fn name(self) -> &'static str {
        match self {
            CheckName::Whittaker => "whittaker",
            CheckName::Torsion => "torsion",
            CheckName::Descent => "descent",
            CheckName::Probe => "probe",
            CheckName::ChargeZeroWitness => "charge_zero_witness",
            CheckName::AlgebraSelftest => "algebra_selftest",
            CheckName::FaultInjection => "fault_injection",
        }
    }

    pub fn default_expectation(self) -> Verdict {
        match self {
            CheckName::ChargeZeroWitness | CheckName::FaultInjection => Verdict::WitnessFound,
            _ => Verdict::Verified,
        }
    }

    fn needs_module(self) -> bool {
        !matches!(self, CheckName::AlgebraSelftest | CheckName::FaultInjection)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub scenario: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub algebra: String,
    /// Simple roots of the Levi factor, 1-based.
    #[serde(default)]
    pub subset: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDescriptor>,
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub budgets: Budgets,
    /// Start vector of the `descent` check, in induced-vector text.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_vector: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub selftest_labels: Vec<String>,
    /// Overrides of the expected verdicts.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<CheckName, Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<String>,
    /// Output directory, unless given on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn expected(&self, check: CheckName) -> Verdict {
        self.expect.get(&check).copied().unwrap_or_else(|| check.default_expectation())
    }

    /// 0-based subset.
    pub fn levi(&self) -> Vec<usize> {
        self.subset.iter().map(|s| s - 1).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if self.scenario.is_empty() || self.scenario.contains(['/', '\\']) {
            return bad("scenario must be a nonempty name without path separators".into());
        }
        if self.checks.is_empty() {
            return bad("no checks requested".into());
        }
        if self.subset.contains(&0) {
            return bad("subset entries are 1-based simple root indices".into());
        }
        self.budgets.validate()?;
        let charge = self.module.as_ref().and_then(|m| m.charge()).cloned();
        for &c in &self.checks {
            if c.needs_module() && self.module.is_none() {
                return bad(format!("check `{c}` needs a module descriptor"));
            }
            match c {
                CheckName::ChargeZeroWitness => {
                    let heis = matches!(
                        self.module,
                        Some(ModuleDescriptor::ImaginaryWhittaker { .. } | ModuleDescriptor::ExtendedWhittaker { .. })
                    );
                    if !heis {
                        return bad("charge_zero_witness needs a Heisenberg Whittaker module".into());
                    }
                    if !charge.as_ref().is_some_and(Zero::is_zero) {
                        return bad("charge_zero_witness requires central charge a = 0".into());
                    }
                }
                CheckName::Torsion | CheckName::Descent | CheckName::Probe if charge.as_ref().is_none_or(Zero::is_zero) => {
                    return bad(format!("check `{c}` requires a nonzero central charge"));
                }
                _ => {}
            }
        }
        if self.checks.contains(&CheckName::Descent) && self.descent_vector.is_none() {
            return bad("check `descent` needs descent_vector".into());
        }
        Ok(())
    }
}
