//! Modules of the form `U(L) ⊗_{U(F)} C_χ` for a subalgebra `F` of the
//! acting algebra `L` and a character `χ` of `F`.
//!
//! The generators of `L` outside `F` are placed before those of `F` in the
//! PBW order, so the free monomials applied to the cyclic vector form a basis
//! and the action is "left multiply, straighten, evaluate the `F`-suffix".

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{monomials_up_to, vadd, BasisVec, EtaTable, ModuleDescriptor, VVec};
use crate::error::{Error, Result};
use crate::parabolic::{LeviGen, ParabolicSpec};
use crate::pbw::{Monomial, OrderTag, PbwRules, Straightener};
use crate::rational::Q;
use crate::roots::AffineWeight;

/// Where an inducing module is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// On its own, or directly as the inducing module of an induction.
    Standalone,
    /// Left factor of a mixed tensor module (acted on by the loop algebra on
    /// `span(S)` and `d`).
    TensorLeft,
    /// Right factor of a mixed tensor module (acted on by the Heisenberg
    /// algebra on `h_l^⊥` and `d`).
    TensorRight,
    /// Factor of a Whittaker-evaluation module (no `d`).
    EvaluationFactor,
}

/// How the derivation acts on a Heisenberg or Levi Whittaker module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationMode {
    Absent,
    /// `d` is a free PBW direction.
    Free,
    /// `d` kills the cyclic vector and acts on monomials by their degree.
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Heisenberg,
    WhittakerLevi,
    Verma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    Free,
    Fixed(Q),
    Absent,
}

pub struct CharacterRules {
    spec: Arc<ParabolicSpec>,
    kind: Kind,
    dmode: DerivationMode,
    lambda: Option<Vec<Q>>,
    eta: BTreeMap<LeviGen, Q>,
    eta_default: Q,
    highest_weight: Vec<Q>,
    charge: Q,
    tag: OrderTag,
}

impl CharacterRules {
    fn is_free(&self, g: &LeviGen) -> bool {
        let sp = &self.spec;
        match (self.kind, g) {
            (_, LeviGen::Derivation) => self.dmode == DerivationMode::Free,
            (_, LeviGen::Central) => false,
            (_, LeviGen::PerpCartan { n, .. }) => *n < 0,
            (Kind::Heisenberg, _) => false,
            (Kind::WhittakerLevi, LeviGen::LeviCartan { n: 0, .. }) => true,
            (_, g) => sp.is_affine_negative(g),
        }
    }

    fn slot(&self, g: &LeviGen) -> Slot {
        let sp = &self.spec;
        if !sp.is_valid_levi_gen(g) {
            return Slot::Absent;
        }
        let perp_present = self.kind == Kind::Heisenberg || self.lambda.is_some();
        match *g {
            LeviGen::Central => Slot::Fixed(self.charge.clone()),
            LeviGen::Derivation => match self.dmode {
                DerivationMode::Absent => Slot::Absent,
                DerivationMode::Free => Slot::Free,
                DerivationMode::Graded => Slot::Fixed(Q::zero()),
            },
            LeviGen::PerpCartan { k, n } => {
                if !perp_present {
                    Slot::Absent
                } else if n < 0 {
                    Slot::Free
                } else if n == 0 {
                    match &self.lambda {
                        Some(l) => Slot::Fixed(l[k as usize].clone()),
                        None => Slot::Absent,
                    }
                } else if self.kind == Kind::Heisenberg {
                    Slot::Fixed(self.eta.get(g).cloned().unwrap_or_else(|| self.eta_default.clone()))
                } else {
                    Slot::Fixed(Q::zero())
                }
            }
            LeviGen::Root { .. } | LeviGen::LeviCartan { .. } => {
                if self.kind == Kind::Heisenberg {
                    Slot::Absent
                } else if self.is_free(g) {
                    Slot::Free
                } else if let LeviGen::LeviCartan { s, n: 0 } = *g {
                    let pos = sp.levi_roots().iter().position(|&x| x == s as usize).expect("valid");
                    Slot::Fixed(self.highest_weight[pos].clone())
                } else if self.kind == Kind::WhittakerLevi {
                    Slot::Fixed(self.eta.get(g).cloned().unwrap_or_else(Q::zero))
                } else {
                    Slot::Fixed(Q::zero())
                }
            }
        }
    }
}

impl PbwRules for CharacterRules {
    type Gen = LeviGen;

    fn order(&self, a: &LeviGen, b: &LeviGen) -> Ordering {
        (!self.is_free(a), a).cmp(&(!self.is_free(b), b))
    }

    fn bracket(&self, a: &LeviGen, b: &LeviGen) -> Vec<(LeviGen, Q)> {
        self.spec.bracket_levi(a, b)
    }

    fn tag(&self) -> OrderTag {
        self.tag
    }
}

pub struct CharacterModule {
    descriptor_kind: &'static str,
    engine: Straightener<CharacterRules>,
}

fn check_lambda(lambda: &Option<Vec<Q>>, spec: &ParabolicSpec) -> Result<()> {
    if let Some(l) = lambda {
        if l.len() != spec.perp_dim() {
            return Err(Error::InvalidDescriptor(format!(
                "lambda has {} entries but h_l^⊥ has dimension {}",
                l.len(),
                spec.perp_dim()
            )));
        }
    }
    Ok(())
}

fn parse_eta(eta: &EtaTable, spec: &ParabolicSpec, valid: impl Fn(&LeviGen) -> bool, what: &str) -> Result<BTreeMap<LeviGen, Q>> {
    let mut out = BTreeMap::new();
    for (key, v) in &eta.values {
        let g = spec.parse_levi_gen(key).map_err(|e| Error::InvalidDescriptor(format!("eta key: {e}")))?;
        if !valid(&g) {
            return Err(Error::InvalidDescriptor(format!("eta key `{key}` is not {what}")));
        }
        if !v.is_zero() {
            out.insert(g, v.clone());
        }
    }
    Ok(out)
}

fn role_error(kind: &str, role: Role) -> Error {
    Error::InvalidDescriptor(format!("`{kind}` cannot be used as {role:?}"))
}

impl CharacterModule {
    pub(crate) fn build(desc: &ModuleDescriptor, spec: &Arc<ParabolicSpec>, role: Role) -> Result<Self> {
        let mut rules = CharacterRules {
            spec: spec.clone(),
            kind: Kind::Heisenberg,
            dmode: DerivationMode::Absent,
            lambda: None,
            eta: BTreeMap::new(),
            eta_default: Q::zero(),
            highest_weight: Vec::new(),
            charge: Q::zero(),
            tag: OrderTag(0),
        };
        let heis_key = |g: &LeviGen| matches!(g, LeviGen::PerpCartan { n, .. } if *n > 0);
        match desc {
            ModuleDescriptor::ImaginaryWhittaker { eta, a, lambda } | ModuleDescriptor::ExtendedWhittaker { eta, a, lambda } => {
                if spec.perp_dim() == 0 {
                    return Err(Error::InvalidDescriptor("h_l^⊥ is zero for this parabolic".into()));
                }
                let extended = matches!(desc, ModuleDescriptor::ExtendedWhittaker { .. });
                check_lambda(lambda, spec)?;
                rules.eta = parse_eta(eta, spec, heis_key, "a positive Heisenberg generator p_k@n, n > 0")?;
                rules.eta_default = eta.default.clone();
                rules.charge = a.clone();
                rules.lambda = lambda.clone();
                rules.dmode = match (role, extended) {
                    (Role::Standalone, false) => DerivationMode::Absent,
                    (Role::Standalone | Role::TensorRight, true) => DerivationMode::Free,
                    (Role::TensorRight, false) => DerivationMode::Graded,
                    _ => return Err(role_error(desc.kind(), role)),
                };
                if role == Role::TensorRight && lambda.is_some() {
                    return Err(Error::InvalidDescriptor("lambda belongs to the tensor module, not its factor".into()));
                }
                if rules.dmode == DerivationMode::Graded && (!rules.eta.is_empty() || !rules.eta_default.is_zero()) {
                    return Err(Error::InvalidDescriptor(
                        "a Whittaker factor on which d acts by degree needs the zero character".into(),
                    ));
                }
            }
            ModuleDescriptor::UniversalWhittakerLevi { eta, a, lambda, without_d } => {
                if spec.levi_roots().is_empty() {
                    return Err(Error::InvalidDescriptor("universal_whittaker_levi needs a nonempty S".into()));
                }
                check_lambda(lambda, spec)?;
                let simple = spec.affine_simple_generators();
                rules.kind = Kind::WhittakerLevi;
                rules.eta = parse_eta(
                    eta,
                    spec,
                    |g| simple.contains(g),
                    "an affine simple root vector (the character must vanish on brackets of positive elements)",
                )?;
                if !eta.default.is_zero() {
                    return Err(Error::InvalidDescriptor(
                        "an affine-positive character has no default: it vanishes off the simple root vectors".into(),
                    ));
                }
                rules.charge = a.clone();
                rules.lambda = lambda.clone();
                rules.dmode = if *without_d { DerivationMode::Absent } else { DerivationMode::Free };
                let ok = match role {
                    Role::Standalone => true,
                    Role::TensorLeft => lambda.is_none() && !without_d,
                    Role::EvaluationFactor => lambda.is_none() && *without_d,
                    Role::TensorRight => false,
                };
                if !ok {
                    return Err(role_error(desc.kind(), role));
                }
            }
            ModuleDescriptor::Verma { highest_weight, a } => {
                if spec.levi_roots().is_empty() {
                    return Err(Error::InvalidDescriptor("verma needs a nonempty S".into()));
                }
                if highest_weight.len() != spec.levi_roots().len() {
                    return Err(Error::InvalidDescriptor(format!(
                        "highest_weight has {} entries, S has {}",
                        highest_weight.len(),
                        spec.levi_roots().len()
                    )));
                }
                if !matches!(role, Role::Standalone | Role::TensorLeft) {
                    return Err(role_error(desc.kind(), role));
                }
                rules.kind = Kind::Verma;
                rules.highest_weight = highest_weight.clone();
                rules.charge = a.clone();
                rules.dmode = DerivationMode::Graded;
            }
            _ => return Err(Error::InvalidDescriptor(format!("`{}` is not a character module", desc.kind()))),
        }
        rules.tag = OrderTag::from_text(&format!("{}/{:?}/{:?}/{}", desc.kind(), role, rules.dmode, spec.subset_text()));
        Ok(CharacterModule { descriptor_kind: desc.kind(), engine: Straightener::new(rules) })
    }

    fn rules(&self) -> &CharacterRules {
        self.engine.rules()
    }

    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.rules().spec
    }

    pub fn kind(&self) -> &'static str {
        self.descriptor_kind
    }

    pub fn is_heisenberg(&self) -> bool {
        self.rules().kind == Kind::Heisenberg
    }

    pub fn derivation_mode(&self) -> DerivationMode {
        self.rules().dmode
    }

    pub fn charge(&self) -> Q {
        self.rules().charge.clone()
    }

    pub fn lambda(&self) -> Option<Vec<Q>> {
        self.rules().lambda.clone()
    }

    /// The character value on a generator of the fixed subalgebra.
    pub fn character_value(&self, g: &LeviGen) -> Option<Q> {
        match self.rules().slot(g) {
            Slot::Fixed(v) => Some(v),
            _ => None,
        }
    }

    pub fn eta_default(&self) -> &Q {
        &self.rules().eta_default
    }

    pub fn acts(&self, g: &LeviGen) -> bool {
        self.rules().slot(g) != Slot::Absent
    }

    pub fn is_free(&self, g: &LeviGen) -> bool {
        self.rules().slot(g) == Slot::Free
    }

    pub fn act(&self, g: &LeviGen, b: &BasisVec) -> Result<VVec> {
        let BasisVec::Mono(m) = b else {
            return Err(Error::Precondition(format!("`{b}` is not a basis vector of {}", self.kind())));
        };
        let rules = self.rules();
        let mut out = VVec::new();
        'terms: for (mono, c) in self.engine.left_mul(*g, m).iter() {
            let factors = mono.factors();
            let split = factors.iter().position(|(x, _)| !rules.is_free(x)).unwrap_or(factors.len());
            let mut value = c.clone();
            for (x, e) in &factors[split..] {
                let Slot::Fixed(v) = rules.slot(x) else {
                    return Err(Error::NotActing(x.to_string()));
                };
                if v.is_zero() {
                    continue 'terms;
                }
                for _ in 0..*e {
                    value *= &v;
                }
            }
            vadd(&mut out, BasisVec::Mono(Monomial::from_factors(factors[..split].to_vec())), value);
        }
        Ok(out)
    }

    pub fn cyclic(&self) -> BasisVec {
        BasisVec::unit()
    }

    pub fn degree(&self, b: &BasisVec) -> u32 {
        match b {
            BasisVec::Mono(m) => m.degree(),
            _ => 0,
        }
    }

    pub fn weight(&self, b: &BasisVec) -> AffineWeight {
        let r = self.spec().rank();
        let mut w = AffineWeight::zero(r);
        if let BasisVec::Mono(m) = b {
            for (g, e) in m.factors() {
                let e = *e as i64;
                if let LeviGen::Root { root, .. } = g {
                    for (i, x) in w.finite.iter_mut().enumerate() {
                        *x += e * root.coeff(i);
                    }
                }
                w.delta += e * g.degree();
            }
        }
        w
    }

    /// Acting generators with loop degree in `[lo, hi]`, in `LeviGen` order.
    pub fn generators(&self, lo: i64, hi: i64) -> Vec<LeviGen> {
        let sp = self.spec();
        let mut out = Vec::new();
        for n in lo..=hi {
            for root in sp.levi_root_list() {
                out.push(LeviGen::Root { root, n });
            }
            for &s in sp.levi_roots() {
                out.push(LeviGen::LeviCartan { s: s as u8, n });
            }
            for k in 0..sp.perp_dim() {
                out.push(LeviGen::PerpCartan { k: k as u8, n });
            }
        }
        out.push(LeviGen::Central);
        out.push(LeviGen::Derivation);
        out.retain(|g| self.acts(g));
        out.sort();
        out
    }

    pub fn enumerate(&self, max_degree: u32, window: i64) -> Vec<BasisVec> {
        let mut free: Vec<LeviGen> = self.generators(-window, 0).into_iter().filter(|g| self.is_free(g)).collect();
        free.sort_by(|a, b| self.rules().order(a, b));
        monomials_up_to(&free, max_degree).into_iter().map(BasisVec::Mono).collect()
    }

    pub fn whittaker_generators(&self, window: i64) -> Vec<(LeviGen, Q)> {
        let sp = self.spec();
        self.generators(0, window)
            .into_iter()
            .filter(|g| match g {
                LeviGen::PerpCartan { n, .. } => *n > 0,
                LeviGen::Root { .. } | LeviGen::LeviCartan { .. } => sp.is_affine_positive(g),
                _ => false,
            })
            .filter_map(|g| self.character_value(&g).map(|v| (g, v)))
            .collect()
    }

    pub fn negative_imaginary(&self, window: i64) -> Vec<LeviGen> {
        self.generators(-window, -1)
            .into_iter()
            .filter(|g| match g {
                LeviGen::PerpCartan { .. } => self.is_heisenberg(),
                LeviGen::LeviCartan { .. } => true,
                _ => false,
            })
            .collect()
    }

    /// Free generators with loop degree in `[-window, 0]`, in PBW order.
    pub fn free_generators(&self, window: i64) -> Vec<LeviGen> {
        let mut free: Vec<LeviGen> = self.generators(-window, 0).into_iter().filter(|g| self.is_free(g)).collect();
        free.sort_by(|a, b| self.rules().order(a, b));
        free
    }

    pub fn unit_vector(&self) -> VVec {
        let mut v = VVec::new();
        v.insert(self.cyclic(), Q::one());
        v
    }
}
