//! Parabolically induced modules `U(ĝ) ⊗_{U(p̂)} V ≅ U(û_-) ⊗ V`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{split_terms, vadd, BasisVec, InducingModule, VVec};
use crate::affine::{LieBasisElement, LieElement};
use crate::error::{Error, Result};
use crate::parabolic::{Block, LeviGen, ParabolicSpec};
use crate::pbw::{parse_monomial, AmbientOrder, Monomial, OrderTag, Straightener};
use crate::rational::{fmt_q, parse_q, Q};
use crate::roots::AffineWeight;

pub type InducedKey = (Monomial<LieBasisElement>, BasisVec);

/// A finite combination of basis vectors `u ⊗ b`, with `u` a normal
/// radical_minus monomial and `b` a basis vector of the inducing module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<InducedKey, Q>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(u: Monomial<LieBasisElement>, b: BasisVec) -> Self {
        let mut v = Self::zero();
        v.add_term(u, b, Q::one());
        v
    }

    /// `1 ⊗ w`.
    pub fn from_inducing(w: &VVec) -> Self {
        let mut v = Self::zero();
        for (b, c) in w {
            v.add_term(Monomial::unit(), b.clone(), c.clone());
        }
        v
    }

    pub fn add_term(&mut self, u: Monomial<LieBasisElement>, b: BasisVec, c: Q) {
        vadd(&mut self.terms, (u, b), c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&InducedKey, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &Monomial<LieBasisElement>, b: &BasisVec) -> Q {
        self.terms.get(&(u.clone(), b.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for ((u, b), v) in &self.terms {
            out.add_term(u.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((u, b), v) in &other.terms {
            out.add_term(u.clone(), b.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// Whether every term lies in `1 ⊗ V`.
    pub fn in_inducing(&self) -> bool {
        self.terms.keys().all(|(u, _)| u.is_unit())
    }

    /// The `1 ⊗ V` part.
    pub fn inducing_part(&self) -> VVec {
        let mut out = VVec::new();
        for ((u, b), c) in &self.terms {
            if u.is_unit() {
                vadd(&mut out, b.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for ModuleVector {
    /// `c*[u|b] + ...`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((u, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[{u}|{b}]", fmt_q(c))?;
        }
        Ok(())
    }
}

/// One weight component of a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Coefficients of the finite weight on simple roots outside `S`.
    pub key: Vec<i64>,
    /// Eigenvalues of `p_k ⊗ 1`.
    pub perp: Vec<Q>,
    pub vector: ModuleVector,
}

pub struct InducedModule {
    spec: Arc<ParabolicSpec>,
    inducing: InducingModule,
    engine: Straightener<AmbientOrder>,
}

/// Induces `v` along the parabolic `spec`.
pub fn induce(spec: Arc<ParabolicSpec>, v: InducingModule) -> Result<InducedModule> {
    let vs = v.spec();
    if !Arc::ptr_eq(vs, &spec)
        && (vs.algebra().root_system().label() != spec.algebra().root_system().label()
            || vs.levi_roots() != spec.levi_roots())
    {
        return Err(Error::InvalidDescriptor(format!(
            "inducing module lives on S = {} of {}, not S = {} of {}",
            vs.subset_text(),
            vs.algebra().root_system().label(),
            spec.subset_text(),
            spec.algebra().root_system().label()
        )));
    }
    let mut probes = vec![LeviGen::Central, LeviGen::Derivation];
    for &s in spec.levi_roots() {
        probes.push(LeviGen::LeviCartan { s: s as u8, n: 0 });
    }
    for k in 0..spec.perp_dim() {
        for n in -1..=1 {
            probes.push(LeviGen::PerpCartan { k: k as u8, n });
        }
    }
    if let Some(g) = probes.iter().find(|g| !v.acts(g)) {
        return Err(Error::InvalidDescriptor(format!(
            "`{}` does not act on `{g}`, so it is not a module over the whole Levi factor",
            v.kind()
        )));
    }
    let engine = Straightener::new(AmbientOrder::new(spec.clone()));
    Ok(InducedModule { spec, inducing: v, engine })
}

impl InducedModule {
    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.spec
    }

    pub fn inducing(&self) -> &InducingModule {
        &self.inducing
    }

    pub fn order_tag(&self) -> OrderTag {
        self.engine.tag()
    }

    pub fn charge(&self) -> Q {
        self.inducing.charge()
    }

    pub fn memo_len(&self) -> usize {
        self.engine.memo_len()
    }

    pub fn cyclic(&self) -> ModuleVector {
        ModuleVector::basis(Monomial::unit(), self.inducing.cyclic())
    }

    /// Applies a Levi monomial to an inducing vector, rightmost factor first.
    fn apply_levi(&self, factors: &[(LieBasisElement, u32)], b: &BasisVec) -> Result<VVec> {
        let mut cur = VVec::new();
        cur.insert(b.clone(), Q::one());
        for (g, e) in factors.iter().rev() {
            let x = self.spec.to_adapted(g)?;
            for _ in 0..*e {
                cur = self.inducing.act_element(&x, &cur)?;
                if cur.is_empty() {
                    return Ok(cur);
                }
            }
        }
        Ok(cur)
    }

    pub fn act_basis(&self, x: &LieBasisElement, v: &ModuleVector) -> Result<ModuleVector> {
        if !self.spec.algebra().contains(x) {
            return Err(Error::ForeignElement(x.to_string()));
        }
        let mut out = ModuleVector::zero();
        for ((u, b), cv) in v.terms() {
            for (mono, c) in self.engine.left_mul(*x, u).iter() {
                let f = mono.factors();
                let minus = f.iter().take_while(|(g, _)| self.spec.classify(g) == Block::RadicalMinus).count();
                let levi = f[minus..].iter().take_while(|(g, _)| self.spec.classify(g) == Block::Levi).count();
                if minus + levi < f.len() {
                    continue;
                }
                let head = Monomial::from_factors(f[..minus].to_vec());
                let coef = c * cv;
                for (b2, c2) in self.apply_levi(&f[minus..], b)? {
                    out.add_term(head.clone(), b2, c2 * &coef);
                }
            }
        }
        Ok(out)
    }

    pub fn act(&self, x: &LieElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (b, c) in x.terms() {
            out = out.add(&self.act_basis(b, v)?.scale(c));
        }
        Ok(out)
    }

    /// Formal weight of `u ⊗ b`.
    pub fn weight(&self, u: &Monomial<LieBasisElement>, b: &BasisVec) -> AffineWeight {
        let r = self.spec.rank();
        let mut w = self.inducing.weight(b);
        for (g, e) in u.factors() {
            let gw = g.grade(r);
            for _ in 0..*e {
                w = &w + &gw;
            }
        }
        w
    }

    fn outside_key(&self, u: &Monomial<LieBasisElement>) -> Vec<i64> {
        let mut key = vec![0i64; self.spec.rank()];
        for (g, e) in u.factors() {
            if let LieBasisElement::RootVector { root, .. } = g {
                for (i, k) in key.iter_mut().enumerate() {
                    *k += root.coeff(i) * *e as i64;
                }
            }
        }
        (0..self.spec.rank()).filter(|i| !self.spec.in_levi(*i)).map(|i| key[i]).collect()
    }

    fn expand_key(&self, key: &[i64]) -> Vec<i64> {
        let mut full = vec![0i64; self.spec.rank()];
        let mut it = key.iter();
        for (i, f) in full.iter_mut().enumerate() {
            if !self.spec.in_levi(i) {
                *f = *it.next().expect("key length");
            }
        }
        full
    }

    /// Splits `v` into `h_l^⊥`-weight components, ordered by key.
    pub fn weight_components(&self, v: &ModuleVector) -> Vec<Component> {
        let mut parts: BTreeMap<Vec<i64>, ModuleVector> = BTreeMap::new();
        for ((u, b), c) in v.terms() {
            parts.entry(self.outside_key(u)).or_default().add_term(u.clone(), b.clone(), c.clone());
        }
        let lambda = self.inducing.lambda().unwrap_or_else(|| vec![Q::zero(); self.spec.perp_dim()]);
        parts
            .into_iter()
            .map(|(key, vector)| {
                let shift = self.spec.perp_pairing(&self.expand_key(&key));
                let perp = lambda.iter().zip(shift).map(|(l, s)| l + s).collect();
                Component { key, perp, vector }
            })
            .collect()
    }

    /// `τ` of a homogeneous vector: the number of simple roots outside `S` in
    /// the weights of its monomials. `None` for zero or mixed vectors.
    pub fn tau(&self, v: &ModuleVector) -> Option<u64> {
        let comps = self.weight_components(v);
        match comps.as_slice() {
            [one] => Some(key_tau(&one.key)),
            _ => None,
        }
    }

    /// Radical_minus basis elements with `|n| ≤ window`, in PBW order.
    pub fn radical_minus_generators(&self, window: i64) -> Vec<LieBasisElement> {
        let mut out = Vec::new();
        for n in -window..=window {
            for root in self.spec.radical_roots(Block::RadicalMinus) {
                out.push(LieBasisElement::root(root, n));
            }
        }
        let rules = self.engine.rules();
        out.sort_by(|a, b| crate::pbw::PbwRules::order(rules, a, b));
        out
    }

    /// Basis vectors `u ⊗ b` with `deg u + deg b ≤ max_degree`, radical
    /// letters in the loop window and inducing letters of degree `≥ -window`.
    pub fn basis(&self, max_degree: u32, window: i64) -> Vec<InducedKey> {
        let gens = self.radical_minus_generators(window);
        let monos = super::monomials_up_to(&gens, max_degree);
        let inner = self.inducing.enumerate(max_degree, window);
        let mut out = Vec::new();
        for u in &monos {
            for b in &inner {
                if u.degree() + self.inducing.degree(b) <= max_degree {
                    out.push((u.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn parse_vector(&self, s: &str) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for term in split_terms(s) {
            let bad = || Error::Parse(format!("malformed induced term `{term}`"));
            let (c, rest) = term.split_once("*[").ok_or_else(bad)?;
            let body = rest.strip_suffix(']').ok_or_else(bad)?;
            let (u, b) = body.split_once('|').ok_or_else(bad)?;
            let u = parse_monomial(u, |t| t.parse::<LieBasisElement>())?;
            if !self.engine.is_normal(&u) || u.factors().iter().any(|(g, _)| self.spec.classify(g) != Block::RadicalMinus) {
                return Err(Error::Parse(format!("`{u}` is not a normal radical_minus monomial")));
            }
            out.add_term(u, self.inducing.parse_basis(b)?, parse_q(c)?);
        }
        Ok(out)
    }

    /// Exact `x·(y·v) - y·(x·v) - [x, y]·v`.
    pub fn representation_defect(&self, x: &LieBasisElement, y: &LieBasisElement, v: &ModuleVector) -> Result<ModuleVector> {
        let xy = self.act_basis(x, &self.act_basis(y, v)?)?;
        let yx = self.act_basis(y, &self.act_basis(x, v)?)?;
        let br = self.spec.algebra().bracket_basis(x, y);
        Ok(xy.sub(&yx).sub(&self.act(&br, v)?))
    }
}

pub fn key_tau(key: &[i64]) -> u64 {
    key.iter().map(|k| k.unsigned_abs()).sum()
}
