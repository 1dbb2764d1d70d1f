//! Tensor-type inducing modules.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{build_with_role, vadd, BasisVec, InducingModule, ModuleDescriptor, Role, VVec};
use crate::error::{Error, Result};
use crate::parabolic::{LeviGen, ParabolicSpec};
use crate::rational::{binomial, fmt_q, pow, q, Q};
use crate::roots::AffineWeight;

/// `(W ⊗ E)[d] = U(l̂_1 ⊕ C d) ⊗_{U(l̂_1)} (W ⊗ E)` with basis `d^k ⊗ w ⊗ e`.
pub struct WhittakerEvaluationModule {
    spec: Arc<ParabolicSpec>,
    whittaker: Box<InducingModule>,
    evaluation: Box<InducingModule>,
}

impl WhittakerEvaluationModule {
    pub(crate) fn build(
        whittaker: &ModuleDescriptor,
        evaluation: &ModuleDescriptor,
        spec: &Arc<ParabolicSpec>,
        role: Role,
    ) -> Result<Self> {
        if !matches!(role, Role::Standalone | Role::TensorLeft) {
            return Err(Error::InvalidDescriptor("whittaker_evaluation cannot be used here".into()));
        }
        if !matches!(whittaker, ModuleDescriptor::UniversalWhittakerLevi { .. }) {
            return Err(Error::InvalidDescriptor("the Whittaker factor must be universal_whittaker_levi".into()));
        }
        if !matches!(evaluation, ModuleDescriptor::Evaluation { .. }) {
            return Err(Error::InvalidDescriptor("the evaluation factor must be an evaluation module".into()));
        }
        let whittaker = Box::new(build_with_role(whittaker, spec, Role::EvaluationFactor)?);
        let evaluation = Box::new(build_with_role(evaluation, spec, Role::EvaluationFactor)?);
        Ok(WhittakerEvaluationModule { spec: spec.clone(), whittaker, evaluation })
    }

    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.spec
    }

    pub fn kind(&self) -> &'static str {
        "whittaker_evaluation"
    }

    pub fn charge(&self) -> Q {
        self.whittaker.charge()
    }

    pub fn lambda(&self) -> Option<Vec<Q>> {
        None
    }

    pub fn whittaker(&self) -> &InducingModule {
        &self.whittaker
    }

    pub fn evaluation(&self) -> &InducingModule {
        &self.evaluation
    }

    pub fn acts(&self, g: &LeviGen) -> bool {
        match g {
            LeviGen::Derivation | LeviGen::Central => true,
            LeviGen::Root { .. } | LeviGen::LeviCartan { .. } => self.whittaker.acts(g),
            LeviGen::PerpCartan { .. } => false,
        }
    }

    fn parts<'a>(&self, b: &'a BasisVec) -> Result<(u32, &'a BasisVec, &'a BasisVec)> {
        if let BasisVec::DPow(k, inner) = b {
            if let BasisVec::Pair(w, e) = inner.as_ref() {
                return Ok((*k, w, e));
            }
        }
        Err(Error::Precondition(format!("`{b}` is not a basis vector of (W ⊗ E)[d]")))
    }

    pub fn act(&self, g: &LeviGen, b: &BasisVec) -> Result<VVec> {
        let (k, w, e) = self.parts(b)?;
        let mut out = VVec::new();
        match g {
            LeviGen::Derivation => {
                vadd(&mut out, BasisVec::dpow(k + 1, BasisVec::pair(w.clone(), e.clone())), Q::one());
            }
            LeviGen::Central => {
                vadd(&mut out, b.clone(), self.charge());
            }
            _ => {
                let mut inner = VVec::new();
                for (w2, c) in self.whittaker.act(g, w)? {
                    vadd(&mut inner, BasisVec::pair(w2, e.clone()), c);
                }
                for (e2, c) in self.evaluation.act(g, e)? {
                    vadd(&mut inner, BasisVec::pair(w.clone(), e2), c);
                }
                // x d^k = (d - n)^k x
                let n = g.degree();
                for j in 0..=k {
                    let c = binomial(k, j) * pow(&q(-n), (k - j) as i64);
                    if c.is_zero() {
                        continue;
                    }
                    for (p, v) in &inner {
                        vadd(&mut out, BasisVec::dpow(j, p.clone()), v * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn cyclic(&self) -> BasisVec {
        BasisVec::dpow(0, BasisVec::pair(self.whittaker.cyclic(), self.evaluation.cyclic()))
    }

    pub fn degree(&self, b: &BasisVec) -> u32 {
        self.parts(b).map(|(k, w, _)| k + self.whittaker.degree(w)).unwrap_or(0)
    }

    pub fn weight(&self, b: &BasisVec) -> AffineWeight {
        match self.parts(b) {
            Ok((_, w, e)) => &self.whittaker.weight(w) + &self.evaluation.weight(e),
            Err(_) => AffineWeight::zero(self.spec.rank()),
        }
    }

    pub fn enumerate(&self, max_degree: u32, window: i64) -> Vec<BasisVec> {
        let evs = self.evaluation.enumerate(0, window);
        let mut out = Vec::new();
        for w in self.whittaker.enumerate(max_degree, window) {
            let dw = self.whittaker.degree(&w);
            for k in 0..=(max_degree - dw) {
                for e in &evs {
                    out.push(BasisVec::dpow(k, BasisVec::pair(w.clone(), e.clone())));
                }
            }
        }
        out
    }

    pub fn whittaker_generators(&self, _window: i64) -> Vec<(LeviGen, Q)> {
        Vec::new()
    }

    pub fn negative_imaginary(&self, window: i64) -> Vec<LeviGen> {
        self.whittaker.negative_imaginary(window)
    }
}

/// The mixed tensor module `M ⊗ S` over the whole Levi factor: the loop
/// algebra on `span(S)` acts on `M`, the Heisenberg complement acts on `S`,
/// `p_k ⊗ 1` acts by `λ_k`, `c` by the shared charge and `d` by the
/// Leibniz rule.
pub struct TensorModule {
    spec: Arc<ParabolicSpec>,
    left: Box<InducingModule>,
    right: Box<InducingModule>,
    lambda: Vec<Q>,
    a: Q,
}

impl TensorModule {
    pub(crate) fn build(
        left: &ModuleDescriptor,
        right: &ModuleDescriptor,
        lambda: &[Q],
        a: &Q,
        spec: &Arc<ParabolicSpec>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDescriptor(m));
        if lambda.len() != spec.perp_dim() {
            return bad(format!("lambda has {} entries but h_l^⊥ has dimension {}", lambda.len(), spec.perp_dim()));
        }
        for (side, d) in [("left", left), ("right", right)] {
            if let Some(c) = d.charge() {
                if c != a {
                    return bad(format!(
                        "{side} factor has central charge {} but the tensor module has {}",
                        fmt_q(c),
                        fmt_q(a)
                    ));
                }
            }
        }
        if !matches!(right, ModuleDescriptor::ImaginaryWhittaker { .. } | ModuleDescriptor::ExtendedWhittaker { .. }) {
            return bad("the right factor must be a Heisenberg Whittaker module".into());
        }
        let left = Box::new(build_with_role(left, spec, Role::TensorLeft)?);
        let right = Box::new(build_with_role(right, spec, Role::TensorRight)?);
        Ok(TensorModule { spec: spec.clone(), left, right, lambda: lambda.to_vec(), a: a.clone() })
    }

    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.spec
    }

    pub fn kind(&self) -> &'static str {
        "tensor"
    }

    pub fn charge(&self) -> Q {
        self.a.clone()
    }

    pub fn lambda(&self) -> Option<Vec<Q>> {
        Some(self.lambda.clone())
    }

    pub fn left(&self) -> &InducingModule {
        &self.left
    }

    pub fn right(&self) -> &InducingModule {
        &self.right
    }

    pub fn acts(&self, g: &LeviGen) -> bool {
        match g {
            LeviGen::Root { .. } | LeviGen::LeviCartan { .. } => self.left.acts(g),
            LeviGen::PerpCartan { k, n } => {
                (*k as usize) < self.lambda.len() && (*n == 0 || self.right.acts(g))
            }
            LeviGen::Central | LeviGen::Derivation => true,
        }
    }

    fn parts<'a>(&self, b: &'a BasisVec) -> Result<(&'a BasisVec, &'a BasisVec)> {
        match b {
            BasisVec::Pair(l, r) => Ok((l, r)),
            _ => Err(Error::Precondition(format!("`{b}` is not a basis vector of a tensor module"))),
        }
    }

    fn on_left(&self, g: &LeviGen, l: &BasisVec, r: &BasisVec, out: &mut VVec) -> Result<()> {
        for (l2, c) in self.left.act(g, l)? {
            vadd(out, BasisVec::pair(l2, r.clone()), c);
        }
        Ok(())
    }

    fn on_right(&self, g: &LeviGen, l: &BasisVec, r: &BasisVec, out: &mut VVec) -> Result<()> {
        for (r2, c) in self.right.act(g, r)? {
            vadd(out, BasisVec::pair(l.clone(), r2), c);
        }
        Ok(())
    }

    pub fn act(&self, g: &LeviGen, b: &BasisVec) -> Result<VVec> {
        let (l, r) = self.parts(b)?;
        let mut out = VVec::new();
        match g {
            LeviGen::Root { .. } | LeviGen::LeviCartan { .. } => self.on_left(g, l, r, &mut out)?,
            LeviGen::PerpCartan { k, n: 0 } => vadd(&mut out, b.clone(), self.lambda[*k as usize].clone()),
            LeviGen::PerpCartan { .. } => self.on_right(g, l, r, &mut out)?,
            LeviGen::Central => vadd(&mut out, b.clone(), self.a.clone()),
            LeviGen::Derivation => {
                self.on_left(g, l, r, &mut out)?;
                self.on_right(g, l, r, &mut out)?;
            }
        }
        Ok(out)
    }

    pub fn cyclic(&self) -> BasisVec {
        BasisVec::pair(self.left.cyclic(), self.right.cyclic())
    }

    pub fn degree(&self, b: &BasisVec) -> u32 {
        self.parts(b).map(|(l, r)| self.left.degree(l) + self.right.degree(r)).unwrap_or(0)
    }

    pub fn weight(&self, b: &BasisVec) -> AffineWeight {
        match self.parts(b) {
            Ok((l, r)) => &self.left.weight(l) + &self.right.weight(r),
            Err(_) => AffineWeight::zero(self.spec.rank()),
        }
    }

    pub fn enumerate(&self, max_degree: u32, window: i64) -> Vec<BasisVec> {
        let rights = self.right.enumerate(max_degree, window);
        let mut out = Vec::new();
        for l in self.left.enumerate(max_degree, window) {
            let dl = self.left.degree(&l);
            for r in &rights {
                if dl + self.right.degree(r) <= max_degree {
                    out.push(BasisVec::pair(l.clone(), r.clone()));
                }
            }
        }
        out
    }

    pub fn whittaker_generators(&self, window: i64) -> Vec<(LeviGen, Q)> {
        self.right.whittaker_generators(window)
    }

    pub fn negative_imaginary(&self, window: i64) -> Vec<LeviGen> {
        let mut out = self.left.negative_imaginary(window);
        out.extend(self.right.negative_imaginary(window));
        out
    }
}
