use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{levi_element_text, require_nonzero_charge, CertificationReport, Verdict};
use crate::error::Result;
use crate::modules::{vvec_text, InducingModule, VVec};
use crate::parabolic::LeviGen;
use crate::rational::{q, Q};

/// One instance of `x̄·x·v - x·x̄·v = a·v` with `[x̄, x] = c`.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub x: LeviGen,
    pub pairing: Vec<(LeviGen, Q)>,
    pub result: VVec,
    pub holds: bool,
}

/// For each negative imaginary direction `g ⊗ t^{-N}` (`1 ≤ N ≤ max_n`) the
/// element `x̄ = g ⊗ t^N / (N (g|g))` pairs with it to `c`, so applying the
/// commutator to the cyclic vector must return `a·v`.
pub fn extraction_identities(m: &InducingModule, max_n: i64) -> Result<Vec<Extraction>> {
    let spec = m.spec().clone();
    let mut dirs: Vec<(LeviGen, Q)> = Vec::new();
    for &s in spec.levi_roots() {
        dirs.push((LeviGen::LeviCartan { s: s as u8, n: 1 }, spec.levi_cartan_norm()));
    }
    for k in 0..spec.perp_dim() {
        dirs.push((LeviGen::PerpCartan { k: k as u8, n: 1 }, spec.perp_form(k, k)));
    }
    let v = m.cyclic();
    let mut unit = VVec::new();
    unit.insert(v.clone(), Q::one());
    let mut out = Vec::new();
    for (dir, norm) in dirs {
        for n in 1..=max_n {
            let (up, down) = match dir {
                LeviGen::LeviCartan { s, .. } => (LeviGen::LeviCartan { s, n }, LeviGen::LeviCartan { s, n: -n }),
                LeviGen::PerpCartan { k, .. } => (LeviGen::PerpCartan { k, n }, LeviGen::PerpCartan { k, n: -n }),
                _ => unreachable!(),
            };
            if norm.is_zero() || !m.acts(&up) || !m.acts(&down) {
                continue;
            }
            let pairing = vec![(up, Q::one() / (q(n) * &norm))];
            let xv = m.act(&down, &v)?;
            let first = m.act_element(&pairing, &xv)?;
            let second = m.act_vec(&down, &m.act_element(&pairing, &unit)?)?;
            let mut result = first;
            for (b, c) in second {
                crate::modules::vadd(&mut result, b, -c);
            }
            let expected: VVec = unit.iter().map(|(b, c)| (b.clone(), c * m.charge())).filter(|(_, c)| !c.is_zero()).collect();
            let holds = result == expected;
            out.push(Extraction { x: down, pairing, result, holds });
        }
    }
    Ok(out)
}

/// Samples `(y, u·v)` with `u·v` a PBW basis vector of degree at most
/// `max_degree` and `y` a nonzero combination of negative imaginary
/// generators, and checks `y·u·v ≠ 0`.
pub fn check_torsion_free(m: &InducingModule, samples: usize, max_degree: u32, window: i64, seed: u64) -> Result<CertificationReport> {
    require_nonzero_charge(&m.charge(), "the torsion check")?;
    let basis = m.enumerate(max_degree, window);
    let ys = m.negative_imaginary(window);
    if ys.is_empty() || basis.is_empty() {
        return Err(crate::Error::Precondition(format!("`{}` has no negative imaginary part to test", m.kind())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    let mut zeros = Vec::new();
    for _ in 0..samples {
        let b = basis.choose(&mut rng).expect("nonempty").clone();
        let terms = rng.random_range(1..=ys.len().min(2));
        let mut y: Vec<(LeviGen, Q)> = Vec::new();
        for g in ys.choose_multiple(&mut rng, terms) {
            let mut c = rng.random_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            y.push((*g, q(c)));
        }
        y.sort();
        let mut w = VVec::new();
        w.insert(b.clone(), Q::one());
        let image = m.act_element(&y, &w)?;
        let entry = json!({"y": levi_element_text(&y), "u": b.to_string()});
        if image.is_empty() {
            zeros.push(entry.clone());
        }
        pairs.push(entry);
    }
    let extraction = extraction_identities(m, 4)?;
    let failed: Vec<String> = extraction
        .iter()
        .filter(|e| !e.holds)
        .map(|e| format!("{}: got {}", e.x, vvec_text(&e.result)))
        .collect();
    let verdict = if zeros.is_empty() && failed.is_empty() { Verdict::Verified } else { Verdict::WitnessFound };
    let identities: Vec<_> = extraction
        .iter()
        .map(|e| json!({"x": e.x.to_string(), "pairing": levi_element_text(&e.pairing), "result": vvec_text(&e.result)}))
        .collect();
    let witness = json!({
        "pairs": pairs,
        "zero_products": zeros,
        "extraction": identities,
        "extraction_failures": failed,
    });
    Ok(CertificationReport::new("torsion", verdict, witness)
        .budget("samples", samples)
        .budget("D", max_degree)
        .budget("window", window)
        .budget("seed", seed))
}
