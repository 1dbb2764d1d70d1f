//! Descent from a nonzero vector of an induced module to `1 ⊗ V`.
//!
//! Take one `h_l^⊥`-weight component. While `τ > 1`, apply a radical_plus
//! root vector that lowers `τ` and keeps the vector nonzero. At `τ = 1`
//! every term is `e_{-φ_i} ⊗ t^{k_i} ⊗ w_i`; pick a pivot `i_0` and apply
//! `e_{φ_{i_0}} ⊗ t^{-N-k_{i_0}}` for growing `N` until the image is a
//! nonzero vector of `1 ⊗ V`.

use serde::{Deserialize, Serialize};

use super::{require_nonzero_charge, Budgets, PivotStrategy, Verdict};
use crate::affine::LieBasisElement;
use crate::error::{Error, Result};
use crate::modules::{key_tau, InducedModule, ModuleVector};
use crate::parabolic::Block;
use crate::roots::Root;

/// `U = steps[last] ⋯ steps[0]` carries `component` to `result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentWitness {
    pub vector: String,
    pub component_key: Vec<i64>,
    pub component: String,
    pub steps: Vec<String>,
    pub tau: Vec<u64>,
    pub result: String,
    pub pivot: String,
}

#[derive(Clone, Debug)]
pub struct DescentOutcome {
    pub verdict: Verdict,
    pub witness: Option<DescentWitness>,
    pub exhausted: Option<String>,
    pub attempts: u64,
}

struct Search<'a> {
    m: &'a InducedModule,
    budgets: &'a Budgets,
    attempts: u64,
}

enum Step {
    Found(LieBasisElement, ModuleVector),
    OutOf(&'static str),
}

impl Search<'_> {
    fn try_act(&mut self, x: &LieBasisElement, v: &ModuleVector) -> Result<Option<ModuleVector>> {
        if self.attempts >= self.budgets.b {
            return Ok(None);
        }
        self.attempts += 1;
        self.m.act_basis(x, v).map(Some)
    }

    fn outside(&self, root: &Root) -> Vec<i64> {
        let spec = self.m.spec();
        (0..spec.rank()).filter(|i| !spec.in_levi(*i)).map(|i| root.coeff(i)).collect()
    }

    fn lower_tau(&mut self, key: &[i64], v: &ModuleVector) -> Result<Step> {
        let tau = key_tau(key);
        let roots: Vec<Root> = self
            .m
            .spec()
            .radical_roots(Block::RadicalPlus)
            .into_iter()
            .filter(|r| {
                let shifted: Vec<i64> = key.iter().zip(self.outside(r)).map(|(a, b)| a + b).collect();
                key_tau(&shifted) < tau
            })
            .collect();
        for n_abs in 0..=self.budgets.n_max {
            let degrees = if n_abs == 0 { vec![0] } else { vec![-n_abs, n_abs] };
            for n in degrees {
                for root in &roots {
                    let x = LieBasisElement::root(*root, n);
                    let Some(w) = self.try_act(&x, v)? else {
                        return Ok(Step::OutOf("B"));
                    };
                    if !w.is_zero() {
                        return Ok(Step::Found(x, w));
                    }
                }
            }
        }
        Ok(Step::OutOf("N_max"))
    }

    fn final_step(&mut self, v: &ModuleVector) -> Result<Step> {
        let spec = self.m.spec();
        let mut terms = Vec::new();
        for ((u, _), _) in v.terms() {
            match u.factors() {
                [(LieBasisElement::RootVector { root, n }, 1)] => {
                    let inside: u64 = spec.levi_roots().iter().map(|&s| root.coeff(s).unsigned_abs()).sum();
                    terms.push((-*root, *n, inside));
                }
                _ => return Err(Error::Precondition(format!("`{u}` is not a single radical root vector"))),
            }
        }
        let pivot = match self.budgets.pivot {
            PivotStrategy::LargestK => terms.iter().max_by_key(|t| t.1),
            PivotStrategy::LeastTauThenK => terms.iter().min_by_key(|t| (t.2, t.1)),
        }
        .expect("nonzero vector");
        let (phi, k0, _) = *pivot;
        let start = terms.iter().map(|t| t.1.abs()).max().unwrap_or(0) + 1;
        for big_n in start..=self.budgets.n_max {
            let x = LieBasisElement::root(phi, -big_n - k0);
            let Some(w) = self.try_act(&x, v)? else {
                return Ok(Step::OutOf("B"));
            };
            if !w.is_zero() && w.in_inducing() {
                return Ok(Step::Found(x, w));
            }
        }
        Ok(Step::OutOf("N_max"))
    }
}

/// Runs the descent on `v`. Budget exhaustion yields an inconclusive
/// outcome, never a failure.
pub fn descend(m: &InducedModule, v: &ModuleVector, budgets: &Budgets) -> Result<DescentOutcome> {
    if v.is_zero() {
        return Err(Error::Precondition("descent needs a nonzero vector".into()));
    }
    require_nonzero_charge(&m.charge(), "descent")?;
    let comp = m.weight_components(v).into_iter().next().expect("nonzero vector");
    let mut search = Search { m, budgets, attempts: 0 };
    let mut cur = comp.vector.clone();
    let mut key = comp.key.clone();
    let mut steps = Vec::new();
    let mut taus = vec![key_tau(&key)];
    loop {
        let tau = key_tau(&key);
        if tau == 0 {
            break;
        }
        let step = if tau > 1 { search.lower_tau(&key, &cur)? } else { search.final_step(&cur)? };
        match step {
            Step::Found(x, w) => {
                steps.push(x.to_string());
                cur = w;
                key = m.weight_components(&cur).into_iter().next().expect("nonzero").key;
                taus.push(key_tau(&key));
            }
            Step::OutOf(which) => {
                return Ok(DescentOutcome {
                    verdict: Verdict::Inconclusive,
                    witness: None,
                    exhausted: Some(which.into()),
                    attempts: search.attempts,
                });
            }
        }
    }
    let witness = DescentWitness {
        vector: v.to_string(),
        component_key: comp.key,
        component: comp.vector.to_string(),
        steps,
        tau: taus,
        result: cur.to_string(),
        pivot: budgets.pivot.name().into(),
    };
    Ok(DescentOutcome { verdict: Verdict::Verified, witness: Some(witness), exhausted: None, attempts: search.attempts })
}
