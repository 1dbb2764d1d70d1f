use num_traits::Zero;
use serde_json::json;

use super::{CertificationReport, Verdict};
use crate::error::{Error, Result};
use crate::modules::{vvec_text, BasisVec, CharacterModule, InducingModule, VVec};
use crate::parabolic::LeviGen;

/// A generator moving a vector of the candidate submodule out of it.
#[derive(Clone, Debug)]
pub struct SpanEscape {
    pub generator: LeviGen,
    pub basis: BasisVec,
    pub image: VVec,
}

/// Basis vectors with at least one negative Heisenberg letter.
fn in_span(b: &BasisVec) -> bool {
    match b {
        BasisVec::Mono(m) => m.factors().iter().any(|(g, _)| matches!(g, LeviGen::PerpCartan { n, .. } if *n < 0)),
        _ => false,
    }
}

/// Looks for a generator of degree in `[-window, window]` that maps a
/// spanning vector of degree at most `max_degree` outside the span of PBW
/// vectors with positive `G_-`-degree.
pub fn span_escape(m: &CharacterModule, window: i64, max_degree: u32) -> Result<Option<SpanEscape>> {
    for g in m.generators(-window, window) {
        for b in m.enumerate(max_degree, window) {
            if !in_span(&b) {
                continue;
            }
            let image = m.act(&g, &b)?;
            if image.keys().any(|k| !in_span(k)) {
                return Ok(Some(SpanEscape { generator: g, basis: b, image }));
            }
        }
    }
    Ok(None)
}

/// At charge zero the positive-degree span is a proper nonzero submodule of
/// a Heisenberg Whittaker module; verified on a truncation.
pub fn reducibility_witness_charge_zero(m: &InducingModule, window: i64, max_degree: u32) -> Result<CertificationReport> {
    let Some(h) = m.as_character().filter(|c| c.is_heisenberg()) else {
        return Err(Error::Precondition("the charge-zero witness needs a Heisenberg Whittaker module".into()));
    };
    if !h.charge().is_zero() {
        return Err(Error::Precondition("the charge-zero witness needs central charge 0".into()));
    }
    let gens = h.generators(-window, window);
    let spanning = h.enumerate(max_degree, window).into_iter().filter(in_span).count();
    let report = match span_escape(h, window, max_degree)? {
        None => {
            // A worked instance of the invariance.
            let n = window.min(2);
            let x = LeviGen::PerpCartan { k: 0, n };
            let u = BasisVec::Mono(crate::pbw::Monomial::single(LeviGen::PerpCartan { k: 0, n: -n }));
            let image = h.act(&x, &u)?;
            let witness = json!({
                "submodule": "span of PBW vectors with at least one letter p_k@n, n < 0",
                "excludes": h.cyclic().to_string(),
                "contains": u.to_string(),
                "generators": gens.len(),
                "spanning_vectors": spanning,
                "example": format!("{x}·[{u}] = {}", vvec_text(&image)),
            });
            CertificationReport::new("charge_zero_witness", Verdict::WitnessFound, witness)
        }
        Some(e) => {
            let witness = json!({
                "escape": format!("{}·[{}] = {}", e.generator, e.basis, vvec_text(&e.image)),
            });
            let mut r = CertificationReport::new("charge_zero_witness", Verdict::Inconclusive, witness);
            r.exhausted = Some("the candidate span is not invariant".into());
            r
        }
    };
    Ok(report.budget("window", window).budget("D", max_degree))
}
