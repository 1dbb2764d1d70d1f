//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use affine_induced::certify::{algebra_selftest, extraction_identities, SuiteWindows, Verdict};
use affine_induced::cli::{build, recheck_outcome, run_config, scenarios, ScenarioConfig, ScenarioReport};
use affine_induced::modules::{InducedModule, ModuleVector};
use affine_induced::parabolic::parabolic_from_subset;
use affine_induced::pbw::{AmbientOrder, Straightener};
use affine_induced::{AffineAlgebra, LieBasisElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, format!("took {:?}, limit {:?}", t.elapsed(), limit))
}

fn load(name: &str) -> Result<ScenarioConfig, String> {
    scenarios::load(name).map_err(|e| e.to_string())
}

fn run(name: &str) -> Result<(ScenarioConfig, ScenarioReport), String> {
    let cfg = load(name)?;
    let out = run_config(&cfg).map_err(|e| format!("{name}: {e}"))?;
    ensure(out.ok, format!("{name}: unexpected verdict"))?;
    Ok((cfg, out.report))
}

fn check<'a>(r: &'a ScenarioReport, name: &str) -> Result<&'a affine_induced::certify::CertificationReport, String> {
    r.checks.iter().find(|c| c.name == name).ok_or_else(|| format!("{}: no {name} check", r.scenario))
}

fn selftest_a1_a2() -> Outcome {
    let t = Instant::now();
    let r = algebra_selftest(&["A1".into(), "A2".into()], Some(SuiteWindows { pairs: 3, triples: 2 })).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Verified, format!("failures: {}", r.witness))?;
    within(t, Duration::from_secs(60))?;
    let jacobi: u64 = r.witness["suites"].as_array().unwrap().iter().map(|s| s["jacobi"].as_u64().unwrap()).sum();
    Ok(format!("A1, A2 with |n|≤3 pairs and |n|≤2 triples ({jacobi} Jacobi triples) in {:?}", t.elapsed()))
}

fn pbw_word_pairs() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    for (label, s, seed) in [("A1", vec![], 11u64), ("A2", vec![0], 12), ("A2", vec![], 13)] {
        let alg = Arc::new(AffineAlgebra::new(label).unwrap());
        let e = Straightener::new(AmbientOrder::new(Arc::new(parabolic_from_subset(alg.clone(), &s).unwrap())));
        let pool = alg.basis_window(-2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = |rng: &mut ChaCha8Rng| -> Vec<LieBasisElement> {
            let len = rng.random_range(0..=3);
            (0..len).map(|_| pool[rng.random_range(0..pool.len())]).collect()
        };
        for _ in 0..200 {
            let (w1, w2) = (word(&mut rng), word(&mut rng));
            let lhs = e.multiply(&e.normal_order(&w1), &e.normal_order(&w2)).map_err(|e| e.to_string())?;
            let cat: Vec<_> = w1.iter().chain(&w2).copied().collect();
            ensure(lhs == e.normal_order(&cat), format!("{label}: {w1:?} · {w2:?}"))?;
            total += 1;
        }
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{total} seeded word pairs agree exactly in {:?}", t.elapsed()))
}

fn defects(m: &InducedModule) -> (usize, usize) {
    let xs = m.spec().algebra().basis_window(-2, 2);
    let basis = m.basis(2, 2);
    let bad = basis
        .par_iter()
        .map(|(u, b)| {
            let v = ModuleVector::basis(u.clone(), b.clone());
            let mut bad = 0;
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    if !m.representation_defect(&xs[i], &xs[j], &v).map(|d| d.is_zero()).unwrap_or(false) {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();
    (bad, basis.len() * xs.len() * (xs.len() - 1) / 2)
}

fn representation_property() -> Outcome {
    let t = Instant::now();
    let mut total = 0;
    for name in ["thm3.3-A1", "thm4.6-A2"] {
        let cfg = load(name)?;
        let m = build(&cfg).map_err(|e| e.to_string())?.induced.ok_or("no induced module")?;
        let (bad, n) = defects(&m);
        ensure(bad == 0, format!("{name}: {bad} of {n} triples fail"))?;
        total += n;
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{total} (x, y, v) triples exact in {:?}", t.elapsed()))
}

fn whittaker_and_torsion(runs: &mut Vec<(ScenarioConfig, ScenarioReport)>) -> Outcome {
    let t = Instant::now();
    for name in ["prop3.1-A1", "prop3.2-A1"] {
        let (cfg, r) = run(name)?;
        ensure(cfg.budgets.eta_window >= 6, format!("{name}: η window {}", cfg.budgets.eta_window))?;
        let w = check(&r, "whittaker")?;
        ensure(w.verdict == Verdict::Verified, format!("{name}: whittaker {}", w.witness))?;
        let tor = check(&r, "torsion")?;
        ensure(tor.verdict == Verdict::Verified, format!("{name}: torsion {}", tor.witness))?;
        ensure(tor.witness["pairs"].as_array().map_or(0, Vec::len) >= 50, format!("{name}: too few pairs"))?;
        runs.push((cfg, r));
    }
    let (cfg, r) = run("prop3.1-a0-witness")?;
    let z = check(&r, "charge_zero_witness")?;
    ensure(z.verdict == Verdict::WitnessFound, format!("a = 0: {}", z.verdict.name()))?;
    runs.push((cfg, r));
    within(t, Duration::from_secs(120))?;
    Ok(format!("η window [1,6], ≥50 torsion pairs at a = 1, witness at a = 0, in {:?}", t.elapsed()))
}

fn levi_torsion(runs: &mut Vec<(ScenarioConfig, ScenarioReport)>) -> Outcome {
    let t = Instant::now();
    let (cfg, r) = run("lem4.1-A2")?;
    let tor = check(&r, "torsion")?;
    ensure(tor.verdict == Verdict::Verified, format!("torsion {}", tor.witness))?;
    let pairs = tor.witness["pairs"].as_array().map_or(0, Vec::len);
    ensure(pairs >= 50, format!("{pairs} pairs"))?;
    let built = build(&cfg).map_err(|e| e.to_string())?;
    let v = built.inducing().ok_or("no module")?;
    let ex = extraction_identities(v, 4).map_err(|e| e.to_string())?;
    let ns: Vec<i64> = ex.iter().map(|e| -e.x.degree()).collect();
    ensure(ns == [1, 2, 3, 4], format!("extraction degrees {ns:?}"))?;
    ensure(ex.iter().all(|e| e.holds), "extraction identity fails")?;
    ensure(tor.witness["extraction_failures"] == Value::Array(vec![]), "reported extraction failures")?;
    runs.push((cfg, r));
    within(t, Duration::from_secs(120))?;
    Ok(format!("{pairs} pairs nonzero, extraction exact for N = 1..4, in {:?}", t.elapsed()))
}

fn descent_probes(runs: &mut Vec<(ScenarioConfig, ScenarioReport)>) -> Outcome {
    let t = Instant::now();
    let mut summary = Vec::new();
    for (name, d) in [("thm3.3-A1", 3), ("thm4.2-A2", 2), ("thm4.4-A2", 2), ("thm4.6-A2", 2)] {
        let (cfg, r) = run(name)?;
        let b = &cfg.budgets;
        ensure(b.d == d && b.n_max == 12 && b.b == 200 && b.r == 20, format!("{name}: budgets {b:?}"))?;
        let p = check(&r, "probe")?;
        ensure(p.verdict == Verdict::Verified, format!("{name}: probe {}", p.verdict.name()))?;
        ensure(p.witness["inconclusive"] == 0, format!("{name}: inconclusive vectors"))?;
        summary.push(format!("{name} {}", p.witness["certificates"].as_array().map_or(0, Vec::len)));
        runs.push((cfg, r));
    }
    within(t, Duration::from_secs(1800))?;
    Ok(format!("certificates: {} in {:?}", summary.join(", "), t.elapsed()))
}

fn recheck_all(runs: &[(ScenarioConfig, ScenarioReport)]) -> Outcome {
    ensure(!runs.is_empty(), "no reports from criteria 4-6")?;
    let mut n = 0;
    for (cfg, r) in runs {
        for (name, ok) in recheck_outcome(cfg, r).map_err(|e| format!("{}: {e}", cfg.scenario))? {
            ensure(ok, format!("{}/{name} does not re-check", cfg.scenario))?;
            n += 1;
        }
    }
    Ok(format!("{n} embedded witnesses re-verify"))
}

fn determinism() -> Outcome {
    let names = scenarios::names();
    for name in &names {
        let cfg = load(name)?;
        let a = run_config(&cfg).and_then(|o| o.report.to_json()).map_err(|e| e.to_string())?;
        let b = run_config(&cfg).and_then(|o| o.report.to_json()).map_err(|e| e.to_string())?;
        ensure(a == b, format!("{name}: reports differ"))?;
    }
    Ok(format!("{} bundled scenarios byte-identical across two runs", names.len()))
}

fn main() {
    let mut runs = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("algebra self-test", selftest_a1_a2()),
        ("PBW oracle equivalence", pbw_word_pairs()),
        ("representation property", representation_property()),
        ("Heisenberg Whittaker suite", whittaker_and_torsion(&mut runs)),
        ("Levi Whittaker torsion suite", levi_torsion(&mut runs)),
        ("descent certificates", descent_probes(&mut runs)),
        ("soundness re-check", recheck_all(&runs)),
        ("determinism", determinism()),
    ];
    let mut failed = 0;
    for (i, (title, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {}: PASS  {title}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
