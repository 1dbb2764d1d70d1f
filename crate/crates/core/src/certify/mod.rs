//! Mechanical checks that either produce an exact, re-checkable witness or
//! say which budget ran out.

mod charge_zero;
mod descent;
mod probe;
mod recheck;
mod selftest;
mod torsion;
mod whittaker;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use charge_zero::{reducibility_witness_charge_zero, span_escape, SpanEscape};
pub use descent::{descend, DescentOutcome, DescentWitness};
pub use probe::irreducibility_probe;
pub use recheck::{recheck_descent, recheck_report};
pub use selftest::{algebra_selftest, corrupted_fixture, fault_injection, selftest_algebra, AlgebraSuite, SuiteWindows};
pub use torsion::{check_torsion_free, extraction_identities, Extraction};
pub use whittaker::check_whittaker;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    WitnessFound,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::WitnessFound => "witness_found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// How the τ = 1 step picks the term to aim at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PivotStrategy {
    /// Largest loop degree `k_i`.
    #[default]
    LargestK,
    /// Fewest simple roots of `S` in `φ_i`, then smallest `k_i`.
    LeastTauThenK,
}

impl PivotStrategy {
    pub fn name(self) -> &'static str {
        match self {
            PivotStrategy::LargestK => "largest_k",
            PivotStrategy::LeastTauThenK => "least_tau_then_k",
        }
    }
}

/// Search budgets shared by the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Maximal PBW degree of probed vectors.
    #[serde(rename = "D", default = "defaults::d")]
    pub d: u32,
    /// Largest loop degree scanned by the descent.
    #[serde(rename = "N_max", default = "defaults::n_max")]
    pub n_max: i64,
    /// Actions allowed per descent.
    #[serde(rename = "B", default = "defaults::b")]
    pub b: u64,
    /// Random combinations per weight space in the probe.
    #[serde(rename = "R", default = "defaults::r")]
    pub r: u32,
    #[serde(default)]
    pub seed: u64,
    /// Loop-degree window for enumerated letters.
    #[serde(default = "defaults::window")]
    pub window: i64,
    /// Sampled pairs in the torsion check.
    #[serde(default = "defaults::samples")]
    pub samples: usize,
    /// Largest positive degree checked by the Whittaker check.
    #[serde(default = "defaults::eta_window")]
    pub eta_window: i64,
    #[serde(default)]
    pub pivot: PivotStrategy,
}

mod defaults {
    pub fn d() -> u32 {
        2
    }
    pub fn n_max() -> i64 {
        12
    }
    pub fn b() -> u64 {
        200
    }
    pub fn r() -> u32 {
        20
    }
    pub fn window() -> i64 {
        1
    }
    pub fn samples() -> usize {
        50
    }
    pub fn eta_window() -> i64 {
        6
    }
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            d: defaults::d(),
            n_max: defaults::n_max(),
            b: defaults::b(),
            r: defaults::r(),
            seed: 0,
            window: defaults::window(),
            samples: defaults::samples(),
            eta_window: defaults::eta_window(),
            pivot: PivotStrategy::default(),
        }
    }
}

impl Budgets {
    pub fn validate(&self) -> crate::Result<()> {
        let bad = |m: &str| Err(crate::Error::Config(format!("budget {m} must be positive")));
        if self.d == 0 {
            return bad("D");
        }
        if self.n_max <= 0 {
            return bad("N_max");
        }
        if self.b == 0 {
            return bad("B");
        }
        if self.window <= 0 {
            return bad("window");
        }
        if self.samples == 0 {
            return bad("samples");
        }
        if self.eta_window <= 0 {
            return bad("eta_window");
        }
        Ok(())
    }
}

/// Outcome of one check. `witness` is canonical text wrapped in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub name: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub budgets: BTreeMap<String, Value>,
    /// Which budget ran out, for inconclusive verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<String>,
}

impl CertificationReport {
    pub fn new(name: &str, verdict: Verdict, witness: Value) -> Self {
        CertificationReport { name: name.into(), verdict, witness, budgets: BTreeMap::new(), exhausted: None }
    }

    pub fn budget(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.budgets.insert(key.into(), value.into());
        self
    }
}

/// `c*g + ...` for a Levi element in the adapted basis.
pub fn levi_element_text(x: &[(crate::parabolic::LeviGen, crate::Q)]) -> String {
    if x.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = x.iter().map(|(g, c)| format!("{}*{g}", crate::rational::fmt_q(c))).collect();
    parts.join(" + ")
}

pub fn parse_levi_element(
    s: &str,
    spec: &crate::ParabolicSpec,
) -> crate::Result<Vec<(crate::parabolic::LeviGen, crate::Q)>> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    s.split(" + ")
        .map(|t| {
            let (c, g) = t
                .split_once('*')
                .ok_or_else(|| crate::Error::Parse(format!("malformed term `{t}`")))?;
            Ok((spec.parse_levi_gen(g)?, crate::rational::parse_q(c)?))
        })
        .collect()
}

fn require_nonzero_charge(a: &crate::Q, what: &str) -> crate::Result<()> {
    if num_traits::Zero::is_zero(a) {
        return Err(crate::Error::Precondition(format!("{what} needs a nonzero central charge")));
    }
    Ok(())
}
