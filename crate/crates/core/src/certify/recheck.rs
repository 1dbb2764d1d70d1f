//! Independent re-verification of embedded witnesses, using only the module
//! action and the bracket.

use num_traits::{One, Zero};
use serde_json::Value;

use super::{
    parse_levi_element, span_escape, AlgebraSuite, CertificationReport, DescentWitness, Verdict,
};
use crate::affine::{AffineAlgebra, LieBasisElement};
use crate::error::{Error, Result};
use crate::modules::{key_tau, vadd, vvec_text, InducedModule, InducingModule, VVec};
use crate::rational::parse_q;

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed witness: {what}"))
}

fn strings(v: &Value, key: &str) -> Result<Vec<String>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(key))?
        .iter()
        .map(|s| s.as_str().map(String::from).ok_or_else(|| bad(key)))
        .collect()
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| bad(key))
}

fn budget_i64(r: &CertificationReport, key: &str) -> Result<i64> {
    r.budgets.get(key).and_then(Value::as_i64).ok_or_else(|| bad(key))
}

/// Replays a descent certificate: re-projects the component, applies the
/// steps and checks the τ trajectory and the final vector.
pub fn recheck_descent(m: &InducedModule, w: &DescentWitness) -> Result<bool> {
    let v = m.parse_vector(&w.vector)?;
    let Some(comp) = m.weight_components(&v).into_iter().find(|c| c.key == w.component_key) else {
        return Ok(false);
    };
    if comp.vector.to_string() != w.component || w.tau.len() != w.steps.len() + 1 {
        return Ok(false);
    }
    let mut cur = comp.vector;
    let mut taus = vec![key_tau(&comp.key)];
    for s in &w.steps {
        let x: LieBasisElement = s.parse()?;
        cur = m.act_basis(&x, &cur)?;
        let Some(t) = m.tau(&cur) else {
            return Ok(false);
        };
        taus.push(t);
    }
    let decreasing = taus.windows(2).all(|p| p[1] < p[0]);
    Ok(taus == w.tau
        && decreasing
        && !cur.is_zero()
        && cur.in_inducing()
        && cur.to_string() == w.result)
}

fn unit(m: &InducingModule) -> VVec {
    let mut u = VVec::new();
    u.insert(m.cyclic(), num_traits::One::one());
    u
}

fn recheck_whittaker(m: &InducingModule, r: &CertificationReport) -> Result<bool> {
    let cyc = unit(m);
    for rel in strings(&r.witness, "relations")? {
        let (g, eta) = rel.split_once(" -> ").ok_or_else(|| bad("relation"))?;
        let g = m.spec().parse_levi_gen(g)?;
        let eta = parse_q(eta)?;
        let expected: VVec = cyc.iter().map(|(b, c)| (b.clone(), c * &eta)).filter(|(_, c)| !c.is_zero()).collect();
        if m.act_vec(&g, &cyc)? != expected {
            return Ok(false);
        }
    }
    Ok(strings(&r.witness, "failures")?.is_empty())
}

fn recheck_torsion(m: &InducingModule, r: &CertificationReport) -> Result<bool> {
    let pairs = r.witness.get("pairs").and_then(Value::as_array).ok_or_else(|| bad("pairs"))?;
    for p in pairs {
        let y = parse_levi_element(text(p, "y")?, m.spec())?;
        let mut w = VVec::new();
        w.insert(m.parse_basis(text(p, "u")?)?, One::one());
        if m.act_element(&y, &w)?.is_empty() {
            return Ok(false);
        }
    }
    let ids = r.witness.get("extraction").and_then(Value::as_array).ok_or_else(|| bad("extraction"))?;
    let cyc = unit(m);
    let expected: VVec = cyc.iter().map(|(b, c)| (b.clone(), c * m.charge())).filter(|(_, c)| !c.is_zero()).collect();
    for e in ids {
        let x = m.spec().parse_levi_gen(text(e, "x")?)?;
        let pairing = parse_levi_element(text(e, "pairing")?, m.spec())?;
        let mut got = m.act_element(&pairing, &m.act(&x, &m.cyclic())?)?;
        for (b, c) in m.act_vec(&x, &m.act_element(&pairing, &cyc)?)? {
            vadd(&mut got, b, -c);
        }
        if got != expected || vvec_text(&got) != text(e, "result")? {
            return Ok(false);
        }
    }
    Ok(!pairs.is_empty())
}

fn recheck_charge_zero(m: &InducingModule, r: &CertificationReport) -> Result<bool> {
    let h = m.as_character().ok_or_else(|| bad("not a character module"))?;
    let window = budget_i64(r, "window")?;
    let d = budget_i64(r, "D")? as u32;
    Ok(span_escape(h, window, d)?.is_none())
}

fn recheck_selftest(r: &CertificationReport) -> Result<bool> {
    let suites: Vec<AlgebraSuite> = serde_json::from_value(r.witness.get("suites").cloned().ok_or_else(|| bad("suites"))?)?;
    for s in &suites {
        if super::selftest_algebra(&AffineAlgebra::new(&s.label)?, s.windows) != *s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-verifies a report from its witness alone. Inconclusive reports carry
/// nothing to re-check and pass when they name the exhausted budget.
pub fn recheck_report(inducing: Option<&InducingModule>, induced: Option<&InducedModule>, r: &CertificationReport) -> Result<bool> {
    if r.verdict == Verdict::Inconclusive {
        return Ok(r.exhausted.is_some());
    }
    let need_v = || inducing.ok_or_else(|| Error::Precondition(format!("re-checking `{}` needs the inducing module", r.name)));
    let need_m = || induced.ok_or_else(|| Error::Precondition(format!("re-checking `{}` needs the induced module", r.name)));
    match r.name.as_str() {
        "whittaker" => recheck_whittaker(need_v()?, r),
        "torsion" => recheck_torsion(need_v()?, r),
        "charge_zero_witness" => recheck_charge_zero(need_v()?, r),
        "algebra_selftest" => recheck_selftest(r),
        "fault_injection" => Ok(super::fault_injection() == *r),
        "descent" => {
            let w: DescentWitness = serde_json::from_value(r.witness.clone())?;
            recheck_descent(need_m()?, &w)
        }
        "probe" => {
            let m = need_m()?;
            let certs = r.witness.get("certificates").and_then(Value::as_array).ok_or_else(|| bad("certificates"))?;
            for c in certs {
                let w: DescentWitness = serde_json::from_value(c.clone())?;
                if !recheck_descent(m, &w)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(bad(&format!("unknown check `{other}`"))),
    }
}
