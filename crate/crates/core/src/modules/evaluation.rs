//! Evaluation modules over the loop algebra on `span(S)`.
//!
//! `x ⊗ t^n` acts on `V(μ_1) ⊗ ... ⊗ V(μ_m)` by `Σ_i a_i^n x^{(i)}`. Only
//! Levis whose Dynkin components are single nodes are supported, so each
//! factor is a tensor product of `sl_2` irreducibles with basis `v_j`,
//! `h v_j = (m - 2j) v_j`, `f v_j = v_{j+1}`, `e v_j = j (m - j + 1) v_{j-1}`.

use std::sync::Arc;

use num_traits::Zero;

use super::{BasisVec, VVec};
use crate::error::{Error, Result};
use crate::parabolic::{LeviGen, ParabolicSpec};
use crate::rational::{pow, q, Q};
use crate::roots::{AffineWeight, Root};

pub struct EvaluationModule {
    spec: Arc<ParabolicSpec>,
    /// `mu[i][c]`: highest weight of factor `i` on the `c`-th root of `S`.
    mu: Vec<Vec<u32>>,
    points: Vec<Q>,
}

impl EvaluationModule {
    pub fn new(spec: Arc<ParabolicSpec>, mu: Vec<Vec<u32>>, points: Vec<Q>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDescriptor(m));
        let k = spec.levi_roots().len();
        if k == 0 {
            return bad("an evaluation module needs a nonempty S".into());
        }
        if spec.components().iter().any(|c| c.len() > 1) {
            return bad(format!(
                "evaluation modules are implemented for Levis of type A1 x ... x A1; S = {} has a larger component",
                spec.subset_text()
            ));
        }
        if mu.is_empty() || mu.len() != points.len() {
            return bad(format!("{} weights for {} evaluation points", mu.len(), points.len()));
        }
        for m in &mu {
            if m.len() != k {
                return bad(format!("weight {m:?} must have {k} entries"));
            }
            if m.iter().all(|&x| x == 0) {
                return bad("evaluation weights must be nonzero".into());
            }
        }
        for (i, a) in points.iter().enumerate() {
            if a.is_zero() {
                return bad("evaluation points must be nonzero".into());
            }
            if points[..i].contains(a) {
                return bad(format!("evaluation point {} is repeated", crate::rational::fmt_q(a)));
            }
        }
        Ok(EvaluationModule { spec, mu, points })
    }

    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.spec
    }

    pub fn kind(&self) -> &'static str {
        "evaluation"
    }

    pub fn charge(&self) -> Q {
        Q::zero()
    }

    pub fn lambda(&self) -> Option<Vec<Q>> {
        None
    }

    pub fn points(&self) -> &[Q] {
        &self.points
    }

    pub fn weights(&self) -> &[Vec<u32>] {
        &self.mu
    }

    fn width(&self) -> usize {
        self.spec.levi_roots().len()
    }

    fn comp_of(&self, s: usize) -> Option<usize> {
        self.spec.levi_roots().iter().position(|&x| x == s)
    }

    pub fn dim(&self) -> usize {
        self.mu.iter().flatten().map(|&m| m as usize + 1).product()
    }

    pub fn acts(&self, g: &LeviGen) -> bool {
        matches!(g, LeviGen::Root { .. } | LeviGen::LeviCartan { .. } | LeviGen::Central) && self.spec.is_valid_levi_gen(g)
    }

    pub fn act(&self, g: &LeviGen, b: &BasisVec) -> Result<VVec> {
        let BasisVec::Eval(idx) = b else {
            return Err(Error::Precondition(format!("`{b}` is not a basis vector of an evaluation module")));
        };
        let w = self.width();
        if idx.len() != w * self.mu.len() {
            return Err(Error::Precondition(format!("`{b}` has the wrong number of indices")));
        }
        let mut out = VVec::new();
        let (comp, n, op) = match *g {
            LeviGen::Central => return Ok(out),
            LeviGen::LeviCartan { s, n } => (self.comp_of(s as usize), n, 0i8),
            LeviGen::Root { root, n } => {
                let s = (0..self.spec.rank()).find(|&i| root.coeff(i) != 0);
                let sign = if root.is_positive() { 1 } else { -1 };
                match s {
                    Some(s) if root == Root::simple(s) || root == -Root::simple(s) => (self.comp_of(s), n, sign),
                    _ => (None, n, 0),
                }
            }
            _ => (None, 0, 0),
        };
        let Some(comp) = comp else {
            return Err(Error::NotActing(g.to_string()));
        };
        for (i, a) in self.points.iter().enumerate() {
            let m = self.mu[i][comp] as i64;
            let slot = i * w + comp;
            let j = idx[slot] as i64;
            let scale = pow(a, n);
            let (target, c) = match op {
                0 => (j, q(m - 2 * j)),
                1 => (j - 1, q(j * (m - j + 1))),
                _ => (j + 1, q(1)),
            };
            if target < 0 || target > m || c.is_zero() {
                continue;
            }
            let mut next = idx.clone();
            next[slot] = target as u32;
            super::vadd(&mut out, BasisVec::Eval(next), c * scale);
        }
        Ok(out)
    }

    pub fn cyclic(&self) -> BasisVec {
        BasisVec::Eval(vec![0; self.width() * self.mu.len()])
    }

    pub fn degree(&self, _b: &BasisVec) -> u32 {
        0
    }

    pub fn weight(&self, b: &BasisVec) -> AffineWeight {
        let mut w = AffineWeight::zero(self.spec.rank());
        if let BasisVec::Eval(idx) = b {
            for (slot, j) in idx.iter().enumerate() {
                let s = self.spec.levi_roots()[slot % self.width()];
                w.finite[s] -= *j as i64;
            }
        }
        w
    }

    pub fn enumerate(&self, _max_degree: u32, _window: i64) -> Vec<BasisVec> {
        let bounds: Vec<u32> = self.mu.iter().flatten().copied().collect();
        let mut out = vec![Vec::new()];
        for m in bounds {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=m).map(move |j| {
                        let mut p = prefix.clone();
                        p.push(j);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(BasisVec::Eval).collect()
    }

    pub fn whittaker_generators(&self, _window: i64) -> Vec<(LeviGen, Q)> {
        Vec::new()
    }

    pub fn negative_imaginary(&self, _window: i64) -> Vec<LeviGen> {
        Vec::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parabolic_from_subset;
    use crate::AffineAlgebra;

    fn a1() -> Arc<ParabolicSpec> {
        Arc::new(parabolic_from_subset(Arc::new(AffineAlgebra::new("A1").unwrap()), &[0]).unwrap())
    }

    #[test]
    fn two_dimensional() {
        let e = EvaluationModule::new(a1(), vec![vec![1]], vec![q(2)]).unwrap();
        assert_eq!(e.enumerate(0, 0).len(), 2);
        let x = LeviGen::Root { root: Root::simple(0), n: 3 };
        let got = e.act(&x, &BasisVec::Eval(vec![1])).unwrap();
        assert_eq!(got.get(&BasisVec::Eval(vec![0])), Some(&q(8)));
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(EvaluationModule::new(a1(), vec![vec![1], vec![1]], vec![q(2), q(2)]).is_err());
        assert!(EvaluationModule::new(a1(), vec![vec![1]], vec![q(0)]).is_err());
        assert!(EvaluationModule::new(a1(), vec![vec![1]], vec![]).is_err());
    }
}
