use serde_json::json;

use super::{CertificationReport, Verdict};
use crate::error::{Error, Result};
use crate::modules::{vvec_text, InducingModule, VVec};
use crate::rational::fmt_q;

/// Checks `x·v = η(x)v` on the positive generators up to degree `window`
/// and `x·y·v = η(x)η(y)v` on their products.
pub fn check_whittaker(m: &InducingModule, window: i64) -> Result<CertificationReport> {
    let gens = m.whittaker_generators(window);
    if gens.is_empty() {
        return Err(Error::Precondition(format!("`{}` has no Whittaker generators", m.kind())));
    }
    let v = m.cyclic();
    let mut unit = VVec::new();
    unit.insert(v.clone(), num_traits::One::one());
    let scaled = |c: &crate::Q| -> VVec { unit.iter().map(|(b, x)| (b.clone(), x * c)).filter(|(_, x)| !num_traits::Zero::is_zero(x)).collect() };

    let mut relations = Vec::new();
    let mut failures = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    for (g, eta) in &gens {
        let got = m.act(g, &v)?;
        if got != scaled(eta) {
            failures.push(format!("{g}·v = {} but η = {}", vvec_text(&got), fmt_q(eta)));
        }
        relations.push(format!("{g} -> {}", fmt_q(eta)));
        images.push(got);
    }
    let mut products = 0usize;
    for (x, ex) in &gens {
        for ((y, ey), yv) in gens.iter().zip(&images) {
            let got = m.act_vec(x, yv)?;
            products += 1;
            if got != scaled(&(ex * ey)) {
                failures.push(format!("{x}·{y}·v = {}", vvec_text(&got)));
            }
        }
    }
    let verdict = if failures.is_empty() { Verdict::Verified } else { Verdict::WitnessFound };
    let witness = json!({
        "cyclic": v.to_string(),
        "relations": relations,
        "products": products,
        "failures": failures,
    });
    Ok(CertificationReport::new("whittaker", verdict, witness).budget("eta_window", window))
}
