//! Inducing modules over Levi factors and the modules induced from them.

mod character;
mod evaluation;
mod induced;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parabolic::{LeviGen, ParabolicSpec};
use crate::pbw::{parse_monomial, Monomial};
use crate::rational::{serde_q, serde_q_map, serde_q_vec, Q};
use crate::roots::AffineWeight;

pub use character::{CharacterModule, DerivationMode, Role};
pub use evaluation::EvaluationModule;
pub use induced::{induce, key_tau, Component, InducedKey, InducedModule, ModuleVector};
pub use tensor::{TensorModule, WhittakerEvaluationModule};

/// Index of a basis vector of an inducing module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisVec {
    /// A PBW monomial applied to the cyclic vector.
    Mono(Monomial<LeviGen>),
    /// Tensor of weight vectors `v_j` (one index per factor and component).
    Eval(Vec<u32>),
    Pair(Box<BasisVec>, Box<BasisVec>),
    /// `d^k ⊗ b`.
    DPow(u32, Box<BasisVec>),
}

impl BasisVec {
    pub fn unit() -> Self {
        BasisVec::Mono(Monomial::unit())
    }

    pub fn pair(a: BasisVec, b: BasisVec) -> Self {
        BasisVec::Pair(Box::new(a), Box::new(b))
    }

    pub fn dpow(k: u32, b: BasisVec) -> Self {
        BasisVec::DPow(k, Box::new(b))
    }

    pub fn parse(s: &str, spec: &ParabolicSpec) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed basis vector `{s}`"));
        if let Some(inner) = s.strip_prefix("pair(").and_then(|r| r.strip_suffix(')')) {
            let (l, r) = split_top(inner).ok_or_else(bad)?;
            Ok(BasisVec::pair(BasisVec::parse(l, spec)?, BasisVec::parse(r, spec)?))
        } else if let Some(inner) = s.strip_prefix("dpow(").and_then(|r| r.strip_suffix(')')) {
            let (k, r) = split_top(inner).ok_or_else(bad)?;
            Ok(BasisVec::dpow(k.trim().parse().map_err(|_| bad())?, BasisVec::parse(r, spec)?))
        } else if let Some(inner) = s.strip_prefix("v(").and_then(|r| r.strip_suffix(')')) {
            let idx = inner.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
            Ok(BasisVec::Eval(idx))
        } else {
            Ok(BasisVec::Mono(parse_monomial(s, |t| spec.parse_levi_gen(t))?))
        }
    }
}

/// Splits `a;b` at the first `;` outside parentheses.
fn split_top(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl fmt::Display for BasisVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisVec::Mono(m) => write!(f, "{m}"),
            BasisVec::Eval(idx) => {
                let items: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "v({})", items.join(","))
            }
            BasisVec::Pair(a, b) => write!(f, "pair({a};{b})"),
            BasisVec::DPow(k, b) => write!(f, "dpow({k};{b})"),
        }
    }
}

/// A vector of an inducing module.
pub type VVec = BTreeMap<BasisVec, Q>;

pub fn vadd<K: Ord>(v: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub fn vvec_text(v: &VVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = v.iter().map(|(b, c)| format!("{}*[{b}]", crate::rational::fmt_q(c))).collect();
    parts.join(" + ")
}

/// Values of a Whittaker character on generators, with a default for
/// untabulated generators of the positive part it lives on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaTable {
    #[serde(default, with = "serde_q_map")]
    pub values: BTreeMap<String, Q>,
    #[serde(default = "crate::rational::zero", with = "serde_q")]
    pub default: Q,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Serializable description of an inducing module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDescriptor {
    /// Whittaker module over the Heisenberg algebra on `h_l^⊥`. When `lambda`
    /// is present the degree-zero part acts by it.
    ImaginaryWhittaker {
        eta: EtaTable,
        #[serde(with = "serde_q")]
        a: Q,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_q_vec")]
        lambda: Option<Vec<Q>>,
    },
    /// As above with a freely acting derivation.
    ExtendedWhittaker {
        eta: EtaTable,
        #[serde(with = "serde_q")]
        a: Q,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_q_vec")]
        lambda: Option<Vec<Q>>,
    },
    /// Universal Whittaker module over the loop algebra on `span(S)` (with a
    /// free `d` unless `without_d`). With `lambda` it also carries the
    /// Heisenberg complement and becomes a module over the whole Levi factor.
    UniversalWhittakerLevi {
        eta: EtaTable,
        #[serde(with = "serde_q")]
        a: Q,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_q_vec")]
        lambda: Option<Vec<Q>>,
        #[serde(default, skip_serializing_if = "is_false")]
        without_d: bool,
    },
    /// Evaluation module: one dominant weight per evaluation point, given by
    /// its values on the simple coroots of `S`.
    Evaluation {
        mu: Vec<Vec<u32>>,
        #[serde(with = "serde_q_vec")]
        points: Vec<Q>,
    },
    /// `(W ⊗ E)[d]` for a derivation-free Whittaker module `W` and an
    /// evaluation module `E`.
    WhittakerEvaluation { whittaker: Box<ModuleDescriptor>, evaluation: Box<ModuleDescriptor> },
    /// Verma module over the loop algebra on `span(S)` with `d`.
    Verma {
        #[serde(with = "serde_q_vec")]
        highest_weight: Vec<Q>,
        #[serde(with = "serde_q")]
        a: Q,
    },
    /// Mixed tensor module `M ⊗ S` over the whole Levi factor.
    Tensor {
        left: Box<ModuleDescriptor>,
        right: Box<ModuleDescriptor>,
        #[serde(with = "serde_q_vec")]
        lambda: Vec<Q>,
        #[serde(with = "serde_q")]
        a: Q,
    },
}

mod opt_q_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{fmt_q, Q};

    pub fn serialize<S: Serializer>(x: &Option<Vec<Q>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        x.as_ref().map(|v| v.iter().map(fmt_q).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Q>>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "crate::rational::serde_q_vec")] Vec<Q>);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

impl ModuleDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleDescriptor::ImaginaryWhittaker { .. } => "imaginary_whittaker",
            ModuleDescriptor::ExtendedWhittaker { .. } => "extended_whittaker",
            ModuleDescriptor::UniversalWhittakerLevi { .. } => "universal_whittaker_levi",
            ModuleDescriptor::Evaluation { .. } => "evaluation",
            ModuleDescriptor::WhittakerEvaluation { .. } => "whittaker_evaluation",
            ModuleDescriptor::Verma { .. } => "verma",
            ModuleDescriptor::Tensor { .. } => "tensor",
        }
    }

    /// The central charge, where the descriptor fixes one.
    pub fn charge(&self) -> Option<&Q> {
        match self {
            ModuleDescriptor::ImaginaryWhittaker { a, .. }
            | ModuleDescriptor::ExtendedWhittaker { a, .. }
            | ModuleDescriptor::UniversalWhittakerLevi { a, .. }
            | ModuleDescriptor::Verma { a, .. }
            | ModuleDescriptor::Tensor { a, .. } => Some(a),
            ModuleDescriptor::WhittakerEvaluation { whittaker, .. } => whittaker.charge(),
            ModuleDescriptor::Evaluation { .. } => None,
        }
    }
}

/// An inducing module with an exact action on an explicit basis.
pub enum InducingModule {
    Character(CharacterModule),
    Evaluation(EvaluationModule),
    WhittakerEvaluation(WhittakerEvaluationModule),
    Tensor(TensorModule),
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $e:expr) => {
        match $self {
            InducingModule::Character($m) => $e,
            InducingModule::Evaluation($m) => $e,
            InducingModule::WhittakerEvaluation($m) => $e,
            InducingModule::Tensor($m) => $e,
        }
    };
}

/// Builds an inducing module for use on its own or directly as the inducing
/// module of a parabolic induction.
pub fn build_inducing(desc: &ModuleDescriptor, spec: &Arc<ParabolicSpec>) -> Result<InducingModule> {
    build_with_role(desc, spec, Role::Standalone)
}

pub(crate) fn build_with_role(desc: &ModuleDescriptor, spec: &Arc<ParabolicSpec>, role: Role) -> Result<InducingModule> {
    match desc {
        ModuleDescriptor::ImaginaryWhittaker { .. }
        | ModuleDescriptor::ExtendedWhittaker { .. }
        | ModuleDescriptor::UniversalWhittakerLevi { .. }
        | ModuleDescriptor::Verma { .. } => Ok(InducingModule::Character(CharacterModule::build(desc, spec, role)?)),
        ModuleDescriptor::Evaluation { mu, points } => {
            if role != Role::Standalone && role != Role::EvaluationFactor {
                return Err(Error::InvalidDescriptor("an evaluation module cannot be used here".into()));
            }
            Ok(InducingModule::Evaluation(EvaluationModule::new(spec.clone(), mu.clone(), points.clone())?))
        }
        ModuleDescriptor::WhittakerEvaluation { whittaker, evaluation } => Ok(InducingModule::WhittakerEvaluation(
            WhittakerEvaluationModule::build(whittaker, evaluation, spec, role)?,
        )),
        ModuleDescriptor::Tensor { left, right, lambda, a } => {
            if role != Role::Standalone {
                return Err(Error::InvalidDescriptor("tensor modules cannot be nested".into()));
            }
            Ok(InducingModule::Tensor(TensorModule::build(left, right, lambda, a, spec)?))
        }
    }
}

impl InducingModule {
    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        dispatch!(self, m => m.spec())
    }

    pub fn kind(&self) -> &'static str {
        dispatch!(self, m => m.kind())
    }

    pub fn charge(&self) -> Q {
        dispatch!(self, m => m.charge())
    }

    /// Scalars by which `p_k ⊗ 1` act, if they act.
    pub fn lambda(&self) -> Option<Vec<Q>> {
        dispatch!(self, m => m.lambda())
    }

    pub fn acts(&self, g: &LeviGen) -> bool {
        dispatch!(self, m => m.acts(g))
    }

    pub fn act(&self, g: &LeviGen, b: &BasisVec) -> Result<VVec> {
        if !self.acts(g) {
            return Err(Error::NotActing(g.to_string()));
        }
        dispatch!(self, m => m.act(g, b))
    }

    pub fn act_vec(&self, g: &LeviGen, v: &VVec) -> Result<VVec> {
        let mut out = VVec::new();
        for (b, c) in v {
            for (b2, c2) in self.act(g, b)? {
                vadd(&mut out, b2, c2 * c);
            }
        }
        Ok(out)
    }

    pub fn act_element(&self, x: &[(LeviGen, Q)], v: &VVec) -> Result<VVec> {
        let mut out = VVec::new();
        for (g, c) in x {
            for (b, v2) in self.act_vec(g, v)? {
                vadd(&mut out, b, v2 * c);
            }
        }
        Ok(out)
    }

    pub fn cyclic(&self) -> BasisVec {
        dispatch!(self, m => m.cyclic())
    }

    pub fn degree(&self, b: &BasisVec) -> u32 {
        dispatch!(self, m => m.degree(b))
    }

    /// Formal weight of a basis vector relative to the cyclic vector.
    pub fn weight(&self, b: &BasisVec) -> AffineWeight {
        dispatch!(self, m => m.weight(b))
    }

    /// Basis vectors of degree at most `max_degree` whose PBW letters have
    /// loop degree at least `-window`.
    pub fn enumerate(&self, max_degree: u32, window: i64) -> Vec<BasisVec> {
        dispatch!(self, m => m.enumerate(max_degree, window))
    }

    /// Positive generators with loop degree at most `window` on which the
    /// cyclic vector is an eigenvector, with their eigenvalues.
    pub fn whittaker_generators(&self, window: i64) -> Vec<(LeviGen, Q)> {
        dispatch!(self, m => m.whittaker_generators(window))
    }

    /// Negative imaginary generators `x` with `-window ≤ deg x < 0`.
    pub fn negative_imaginary(&self, window: i64) -> Vec<LeviGen> {
        dispatch!(self, m => m.negative_imaginary(window))
    }

    /// The Heisenberg-type factor carrying a Whittaker character, if any.
    pub fn heisenberg_factor(&self) -> Option<&CharacterModule> {
        match self {
            InducingModule::Character(m) if m.is_heisenberg() => Some(m),
            InducingModule::Tensor(t) => t.right().heisenberg_factor(),
            _ => None,
        }
    }

    pub fn as_character(&self) -> Option<&CharacterModule> {
        match self {
            InducingModule::Character(m) => Some(m),
            _ => None,
        }
    }

    pub fn parse_basis(&self, s: &str) -> Result<BasisVec> {
        BasisVec::parse(s, self.spec())
    }

    /// Parses `coef*[basis] + ...`.
    pub fn parse_vvec(&self, s: &str) -> Result<VVec> {
        let mut out = VVec::new();
        if s.trim() == "0" {
            return Ok(out);
        }
        for term in split_terms(s) {
            let (c, b) = term
                .split_once("*[")
                .and_then(|(c, rest)| rest.strip_suffix(']').map(|b| (c, b)))
                .ok_or_else(|| Error::Parse(format!("malformed term `{term}`")))?;
            vadd(&mut out, self.parse_basis(b)?, crate::rational::parse_q(c)?);
        }
        Ok(out)
    }
}

/// Splits on ` + ` outside brackets.
pub(crate) fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth -= 1,
            b' ' if depth == 0 && s[i..].starts_with(" + ") => {
                out.push(s[start..i].trim());
                start = i + 3;
                i += 3;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(s[start..].trim());
    out
}

/// Multisets of size at most `max_degree` over `gens` (already in PBW
/// order), as monomials.
pub(crate) fn monomials_up_to<G: Copy + Eq>(gens: &[G], max_degree: u32) -> Vec<Monomial<G>> {
    let mut out = vec![Monomial::unit()];
    fn rec<G: Copy + Eq>(gens: &[G], start: usize, left: u32, cur: &mut Vec<(G, u32)>, out: &mut Vec<Monomial<G>>) {
        for i in start..gens.len() {
            for e in 1..=left {
                cur.push((gens[i], e));
                out.push(Monomial::from_factors(cur.clone()));
                rec(gens, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
    }
    rec(gens, 0, max_degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parabolic_from_subset;
    use crate::AffineAlgebra;

    #[test]
    fn basis_text_roundtrip() {
        let spec = parabolic_from_subset(Arc::new(AffineAlgebra::new("A2").unwrap()), &[0]).unwrap();
        for s in ["1", "e[-a1]@0 h1@-1^2 d", "v(0,1)", "pair(e[-a1]@-1;p1@-1 d^2)", "dpow(3;pair(1;v(1)))"] {
            assert_eq!(BasisVec::parse(s, &spec).unwrap().to_string(), s);
        }
        assert!(BasisVec::parse("pair(1)", &spec).is_err());
        assert!(BasisVec::parse("v(a)", &spec).is_err());
    }

    #[test]
    fn multisets() {
        let m = monomials_up_to(&[1, 2, 3], 2);
        // 1 + 3 + 6
        assert_eq!(m.len(), 10);
        assert_eq!(split_terms("1*[pair(a;b + c)] + 2*[x]"), vec!["1*[pair(a;b + c)]", "2*[x]"]);
    }

    #[test]
    fn descriptor_json() {
        let text = r#"{"kind":"tensor","left":{"kind":"verma","highest_weight":["1"],"a":1},
            "right":{"kind":"extended_whittaker","eta":{"default":"1"},"a":"1"},"lambda":["0"],"a":"1"}"#;
        let d: ModuleDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(d.kind(), "tensor");
        let back: ModuleDescriptor = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<ModuleDescriptor>(r#"{"kind":"verma","highest_weight":[],"a":1,"x":2}"#).is_err());
    }
}
