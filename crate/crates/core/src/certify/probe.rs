use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{descend, require_nonzero_charge, Budgets, CertificationReport, Verdict};
use crate::error::Result;
use crate::modules::{InducedModule, ModuleVector};
use crate::rational::q;
use crate::roots::AffineWeight;

/// Runs the descent on every basis vector of degree at most `D` and on `R`
/// seeded random combinations per formal weight space with at least two
/// basis vectors.
pub fn irreducibility_probe(m: &InducedModule, budgets: &Budgets) -> Result<CertificationReport> {
    require_nonzero_charge(&m.charge(), "the irreducibility probe")?;
    let basis = m.basis(budgets.d, budgets.window);
    let mut vectors: Vec<ModuleVector> = basis.iter().map(|(u, b)| ModuleVector::basis(u.clone(), b.clone())).collect();

    let mut spaces: BTreeMap<AffineWeight, Vec<usize>> = BTreeMap::new();
    for (i, (u, b)) in basis.iter().enumerate() {
        spaces.entry(m.weight(u, b)).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budgets.seed);
    let mut random = 0usize;
    for members in spaces.values().filter(|s| s.len() >= 2) {
        for _ in 0..budgets.r {
            let mut v = ModuleVector::zero();
            for &i in members {
                let c = rng.random_range(-3i64..=3);
                let (u, b) = &basis[i];
                v.add_term(u.clone(), b.clone(), q(c));
            }
            if v.is_zero() {
                let (u, b) = &basis[members[0]];
                v.add_term(u.clone(), b.clone(), q(1));
            }
            vectors.push(v);
            random += 1;
        }
    }

    let outcomes = vectors.par_iter().map(|v| descend(m, v, budgets)).collect::<Result<Vec<_>>>()?;
    let mut certificates = Vec::new();
    let mut open = Vec::new();
    let mut attempts = 0u64;
    for (v, o) in vectors.iter().zip(&outcomes) {
        attempts = attempts.max(o.attempts);
        match &o.witness {
            Some(w) => certificates.push(serde_json::to_value(w)?),
            None => open.push(json!({"vector": v.to_string(), "exhausted": o.exhausted})),
        }
    }
    let verdict = if open.is_empty() { Verdict::Verified } else { Verdict::Inconclusive };
    let witness = json!({
        "statement": format!(
            "descent certificate at degree {}: every probed vector generates a nonzero vector of 1⊗V",
            budgets.d
        ),
        "basis_vectors": basis.len(),
        "random_vectors": random,
        "inconclusive": open.len(),
        "inconclusive_vectors": open,
        "max_attempts": attempts,
        "certificates": certificates,
    });
    let mut report = CertificationReport::new("probe", verdict, witness)
        .budget("D", budgets.d)
        .budget("N_max", budgets.n_max)
        .budget("B", budgets.b)
        .budget("R", budgets.r)
        .budget("seed", budgets.seed)
        .budget("window", budgets.window)
        .budget("pivot", budgets.pivot.name());
    if verdict == Verdict::Inconclusive {
        report.exhausted = Some("descent budgets (N_max or B) on some probed vectors".into());
    }
    Ok(report)
}
