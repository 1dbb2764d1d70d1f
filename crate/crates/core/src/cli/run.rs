use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;

use super::config::{CheckName, ScenarioConfig};
use super::report::ScenarioReport;
use crate::affine::AffineAlgebra;
use crate::certify::{
    algebra_selftest, check_torsion_free, check_whittaker, descend, fault_injection, irreducibility_probe,
    recheck_report, reducibility_witness_charge_zero, CertificationReport, Verdict,
};
use crate::error::{Error, Result};
use crate::modules::{build_inducing, induce, InducedModule, InducingModule, ModuleDescriptor};
use crate::parabolic::parabolic_from_subset;
use crate::rational::fmt_q;

pub struct RunOutcome {
    pub report: ScenarioReport,
    /// `(check, expected, millis)` in report order.
    pub timings: Vec<(CheckName, Verdict, u128)>,
    /// Whether every verdict matches its expectation or is inconclusive.
    pub ok: bool,
}

impl RunOutcome {
    pub fn summary(&self) -> String {
        let mut s = format!("scenario {} (config {})\n", self.report.scenario, &self.report.config_hash[..16]);
        for h in &self.report.hypotheses {
            s.push_str(&format!("  hypothesis: {h}\n"));
        }
        for (c, (name, expected, ms)) in self.report.checks.iter().zip(&self.timings) {
            let mark = if c.verdict == *expected {
                "ok"
            } else if c.verdict == Verdict::Inconclusive {
                "inconclusive"
            } else {
                "UNEXPECTED"
            };
            s.push_str(&format!("  {name}: {} (expected {}) [{mark}] {ms} ms", c.verdict.name(), expected.name()));
            if let Some(e) = &c.exhausted {
                s.push_str(&format!(", exhausted: {e}"));
            }
            s.push('\n');
        }
        s.push_str(if self.ok { "status: ok\n" } else { "status: FAILED\n" });
        s
    }
}

/// The modules a scenario runs against.
pub struct Built {
    standalone: Option<InducingModule>,
    pub induced: Option<InducedModule>,
}

impl Built {
    pub fn inducing(&self) -> Option<&InducingModule> {
        self.induced.as_ref().map(InducedModule::inducing).or(self.standalone.as_ref())
    }
}

pub fn build(cfg: &ScenarioConfig) -> Result<Built> {
    let Some(desc) = &cfg.module else {
        return Ok(Built { standalone: None, induced: None });
    };
    let alg = Arc::new(AffineAlgebra::new(&cfg.algebra)?);
    let spec = Arc::new(parabolic_from_subset(alg, &cfg.levi())?);
    let needs_induced = cfg.checks.iter().any(|c| matches!(c, CheckName::Descent | CheckName::Probe));
    let inducing = build_inducing(desc, &spec)?;
    Ok(if needs_induced {
        Built { standalone: None, induced: Some(induce(spec, inducing)?) }
    } else {
        Built { standalone: Some(inducing), induced: None }
    })
}

fn eta_hypothesis(desc: &ModuleDescriptor, eta_window: i64) -> Option<String> {
    match desc {
        ModuleDescriptor::ImaginaryWhittaker { eta, .. } | ModuleDescriptor::ExtendedWhittaker { eta, .. } => {
            Some(if !eta.default.is_zero() {
                format!(
                    "η: default rule {} is nonzero, so η(p_k@n) ≠ 0 for infinitely many n > 0",
                    fmt_q(&eta.default)
                )
            } else if eta.values.values().any(|v| !v.is_zero()) {
                format!("η: default rule 0; nonzero only on the table {:?}; the infinitely-many hypothesis is not met", eta.values.keys().collect::<Vec<_>>())
            } else {
                format!("η ≡ 0 (checked up to degree {eta_window})")
            })
        }
        ModuleDescriptor::UniversalWhittakerLevi { eta, .. } => Some(format!(
            "η: affine-positive character carried on the affine simple root vectors {:?}, zero elsewhere",
            eta.values.keys().collect::<Vec<_>>()
        )),
        ModuleDescriptor::Tensor { left, right, .. } => {
            let mut parts: Vec<String> = [left, right].iter().filter_map(|d| eta_hypothesis(d, eta_window)).collect();
            parts.dedup();
            (!parts.is_empty()).then(|| parts.join("; "))
        }
        ModuleDescriptor::WhittakerEvaluation { whittaker, .. } => eta_hypothesis(whittaker, eta_window),
        _ => None,
    }
}

fn hypotheses(cfg: &ScenarioConfig) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(desc) = &cfg.module {
        if let Some(a) = desc.charge() {
            let kind = if a.is_zero() { "zero" } else { "nonzero" };
            out.push(format!("central charge a = {} ({kind})", fmt_q(a)));
        }
        if let Some(h) = eta_hypothesis(desc, cfg.budgets.eta_window) {
            out.push(h);
        }
        if cfg.checks.iter().any(|c| matches!(c, CheckName::Probe | CheckName::Descent)) {
            out.push(
                "the inducing module is used in its universal form; a descent certificate shows that every probed \
                 vector generates a nonzero vector of 1⊗V, so irreducibility of the induced module follows when V is \
                 irreducible"
                    .into(),
            );
        }
    }
    out.extend(cfg.hypotheses.iter().cloned());
    out
}

fn run_check(cfg: &ScenarioConfig, built: &Built, check: CheckName) -> Result<CertificationReport> {
    let b = &cfg.budgets;
    let v = || built.inducing().ok_or_else(|| Error::Config(format!("`{check}` needs a module")));
    let m = || built.induced.as_ref().ok_or_else(|| Error::Config(format!("`{check}` needs an induced module")));
    match check {
        CheckName::Whittaker => check_whittaker(v()?, b.eta_window),
        CheckName::Torsion => check_torsion_free(v()?, b.samples, b.d, b.window, b.seed),
        CheckName::ChargeZeroWitness => reducibility_witness_charge_zero(v()?, b.window.max(2), b.d),
        CheckName::Probe => irreducibility_probe(m()?, b),
        CheckName::Descent => {
            let m = m()?;
            let vector = m.parse_vector(cfg.descent_vector.as_deref().unwrap_or_default())?;
            let out = descend(m, &vector, b)?;
            let witness = match &out.witness {
                Some(w) => serde_json::to_value(w)?,
                None => serde_json::json!({"vector": vector.to_string()}),
            };
            let mut r = CertificationReport::new("descent", out.verdict, witness)
                .budget("N_max", b.n_max)
                .budget("B", b.b)
                .budget("attempts", out.attempts)
                .budget("pivot", b.pivot.name());
            r.exhausted = out.exhausted;
            Ok(r)
        }
        CheckName::AlgebraSelftest => {
            let labels = if cfg.selftest_labels.is_empty() { vec![cfg.algebra.clone()] } else { cfg.selftest_labels.clone() };
            algebra_selftest(&labels, None)
        }
        CheckName::FaultInjection => Ok(fault_injection()),
    }
}

/// Runs every check of a scenario. Checks run concurrently; the report keeps
/// the config order.
pub fn run_config(cfg: &ScenarioConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let built = build(cfg)?;
    let results: Vec<(CertificationReport, u128)> = cfg
        .checks
        .par_iter()
        .map(|&c| {
            let t = Instant::now();
            run_check(cfg, &built, c).map(|r| (r, t.elapsed().as_millis()))
        })
        .collect::<Result<_>>()?;
    let mut ok = true;
    let mut timings = Vec::new();
    let mut checks = Vec::new();
    for (&c, (r, ms)) in cfg.checks.iter().zip(results) {
        let expected = cfg.expected(c);
        if r.verdict != expected && r.verdict != Verdict::Inconclusive {
            ok = false;
        }
        timings.push((c, expected, ms));
        checks.push(r);
    }
    let report = ScenarioReport::new(cfg, hypotheses(cfg), checks)?;
    Ok(RunOutcome { report, timings, ok })
}

/// Re-verifies every check of a report against freshly built modules.
pub fn recheck_outcome(cfg: &ScenarioConfig, report: &ScenarioReport) -> Result<Vec<(String, bool)>> {
    let built = build(cfg)?;
    report
        .checks
        .iter()
        .map(|r| Ok((r.name.clone(), recheck_report(built.inducing(), built.induced.as_ref(), r)?)))
        .collect()
}
