//! PBW straightening in universal enveloping algebras.
//!
//! A [`Monomial`] lists `(generator, exponent)` pairs in increasing PBW order
//! from left to right; the empty monomial is the unit. Words are straightened
//! by repeated left multiplication, using `g·h = h·g + [g, h]` whenever `g`
//! comes after `h`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parabolic::{Block, ParabolicSpec};
use crate::rational::{fmt_q, Q};
use crate::LieBasisElement;

/// Identifies the total order an enveloping-algebra element is normalized for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderTag(pub u64);

impl OrderTag {
    pub fn from_text(s: &str) -> Self {
        // FNV-1a.
        let mut h: u64 = 0xcbf29ce484222325;
        for b in s.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        OrderTag(h)
    }
}

pub trait PbwRules: Send + Sync {
    type Gen: Copy + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    /// The PBW order.
    fn order(&self, a: &Self::Gen, b: &Self::Gen) -> Ordering;

    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> Vec<(Self::Gen, Q)>;

    fn tag(&self) -> OrderTag;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<G>(Vec<(G, u32)>);

impl<G: Copy + Eq> Monomial<G> {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn single(g: G) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// Builds a monomial from factors; the caller guarantees PBW order.
    pub fn from_factors(factors: Vec<(G, u32)>) -> Self {
        Monomial(factors.into_iter().filter(|f| f.1 > 0).collect())
    }

    pub fn factors(&self) -> &[(G, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    /// The factors expanded into a word.
    pub fn letters(&self) -> Vec<G> {
        self.0.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize)).collect()
    }

    /// Removes one copy of the first factor.
    fn pop_first(&self) -> Self {
        let mut f = self.0.clone();
        if f[0].1 == 1 {
            f.remove(0);
        } else {
            f[0].1 -= 1;
        }
        Monomial(f)
    }

    fn push_front(&self, g: G) -> Self {
        let mut f = Vec::with_capacity(self.0.len() + 1);
        f.push((g, 1));
        f.extend_from_slice(&self.0);
        Monomial(f)
    }

    fn bump_first(&self) -> Self {
        let mut f = self.0.clone();
        f[0].1 += 1;
        Monomial(f)
    }
}

impl<G: fmt::Display> fmt::Display for Monomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses the [`Monomial`] text form with a generator parser. Order is not
/// checked here.
pub fn parse_monomial<G: Copy + Eq>(s: &str, mut gen: impl FnMut(&str) -> Result<G>) -> Result<Monomial<G>> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::unit());
    }
    let mut factors = Vec::new();
    for tok in s.split_whitespace() {
        let (g, e) = match tok.rsplit_once('^') {
            Some((g, e)) => (g, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
            None => (tok, 1),
        };
        if e == 0 {
            return Err(Error::Parse(format!("zero exponent in `{tok}`")));
        }
        factors.push((gen(g)?, e));
    }
    Ok(Monomial(factors))
}

pub type Terms<G> = Vec<(Monomial<G>, Q)>;

/// An element of the enveloping algebra in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement<G: Ord> {
    terms: BTreeMap<Monomial<G>, Q>,
    tag: OrderTag,
}

impl<G: Copy + Ord + fmt::Display> UeaElement<G> {
    pub fn zero(tag: OrderTag) -> Self {
        UeaElement { terms: BTreeMap::new(), tag }
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<G>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial<G>) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial<G>, c: Q) {
        add_into(&mut self.terms, m, c);
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::OrderTagMismatch);
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Part of maximal word length.
    pub fn top_degree_part(&self) -> Self {
        let top = self.terms.keys().map(|m| m.degree()).max().unwrap_or(0);
        UeaElement {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == top).map(|(m, c)| (m.clone(), c.clone())).collect(),
            tag: self.tag,
        }
    }
}

impl<G: fmt::Display + Ord> fmt::Display for UeaElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*({m})", fmt_q(c))?;
        }
        Ok(())
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
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

type Memo<G> = RwLock<HashMap<(G, Monomial<G>), Arc<Terms<G>>>>;

/// Normal-ordering engine with a shared memo of left multiplications.
///
/// The memo is insert-only and keyed by `(g, m)`, so concurrent readers
/// always see the same value for a key.
pub struct Straightener<R: PbwRules> {
    rules: R,
    memo: Memo<R::Gen>,
}

impl<R: PbwRules> Straightener<R> {
    pub fn new(rules: R) -> Self {
        Straightener { rules, memo: RwLock::new(HashMap::new()) }
    }

    pub fn rules(&self) -> &R {
        &self.rules
    }

    pub fn tag(&self) -> OrderTag {
        self.rules.tag()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_normal(&self, m: &Monomial<R::Gen>) -> bool {
        m.0.iter().all(|f| f.1 > 0) && m.0.windows(2).all(|w| self.rules.order(&w[0].0, &w[1].0) == Ordering::Less)
    }

    /// `g · m` in normal form, for a normal monomial `m`.
    pub fn left_mul(&self, g: R::Gen, m: &Monomial<R::Gen>) -> Arc<Terms<R::Gen>> {
        let Some(&(h, _)) = m.0.first() else {
            return Arc::new(vec![(Monomial::single(g), Q::one())]);
        };
        match self.rules.order(&g, &h) {
            Ordering::Less => Arc::new(vec![(m.push_front(g), Q::one())]),
            Ordering::Equal => Arc::new(vec![(m.bump_first(), Q::one())]),
            Ordering::Greater => {
                let key = (g, m.clone());
                if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
                    return hit.clone();
                }
                // g·h·rest = h·(g·rest) + [g, h]·rest
                let rest = m.pop_first();
                let mut acc: BTreeMap<Monomial<R::Gen>, Q> = BTreeMap::new();
                for (mono, c) in self.left_mul(g, &rest).iter() {
                    for (mono2, c2) in self.left_mul(h, mono).iter() {
                        add_into(&mut acc, mono2.clone(), c * c2);
                    }
                }
                for (z, cz) in self.rules.bracket(&g, &h) {
                    for (mono, c) in self.left_mul(z, &rest).iter() {
                        add_into(&mut acc, mono.clone(), &cz * c);
                    }
                }
                let out = Arc::new(acc.into_iter().collect::<Vec<_>>());
                self.memo.write().expect("memo lock").entry(key).or_insert_with(|| out.clone());
                out
            }
        }
    }

    /// `word · m` for a normal monomial `m`.
    pub fn word_times(&self, word: &[R::Gen], m: &Monomial<R::Gen>) -> BTreeMap<Monomial<R::Gen>, Q> {
        let mut cur: BTreeMap<Monomial<R::Gen>, Q> = BTreeMap::new();
        cur.insert(m.clone(), Q::one());
        for g in word.iter().rev() {
            let mut next = BTreeMap::new();
            for (mono, c) in &cur {
                for (mono2, c2) in self.left_mul(*g, mono).iter() {
                    add_into(&mut next, mono2.clone(), c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn normal_order(&self, word: &[R::Gen]) -> UeaElement<R::Gen> {
        UeaElement { terms: self.word_times(word, &Monomial::unit()), tag: self.tag() }
    }

    pub fn element(&self, m: Monomial<R::Gen>) -> Result<UeaElement<R::Gen>> {
        if !self.is_normal(&m) {
            return Err(Error::Precondition(format!("monomial `{m}` is not in normal order")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(m, Q::one());
        Ok(UeaElement { terms, tag: self.tag() })
    }

    pub fn multiply(&self, a: &UeaElement<R::Gen>, b: &UeaElement<R::Gen>) -> Result<UeaElement<R::Gen>> {
        if a.tag != self.tag() || b.tag != self.tag() {
            return Err(Error::OrderTagMismatch);
        }
        let mut out = BTreeMap::new();
        for (ma, ca) in a.terms() {
            let word = ma.letters();
            for (mb, cb) in b.terms() {
                let c = ca * cb;
                for (m, v) in self.word_times(&word, mb) {
                    add_into(&mut out, m, v * &c);
                }
            }
        }
        Ok(UeaElement { terms: out, tag: self.tag() })
    }

    /// The image of a Lie element `Σ c_i g_i` in the enveloping algebra.
    pub fn lift(&self, x: &[(R::Gen, Q)]) -> UeaElement<R::Gen> {
        let mut out = UeaElement::zero(self.tag());
        for (g, c) in x {
            out.add_term(Monomial::single(*g), c.clone());
        }
        out
    }
}

/// The parabolic-adapted order on the ambient basis: radical_minus, then
/// Levi, then radical_plus. Inside a block elements are ordered by loop
/// degree, then root, then Cartan index, with `c` and `d` last.
pub struct AmbientOrder {
    spec: Arc<ParabolicSpec>,
    tag: OrderTag,
}

impl AmbientOrder {
    pub fn new(spec: Arc<ParabolicSpec>) -> Self {
        let tag = OrderTag::from_text(&format!(
            "ambient/{}/{}",
            spec.algebra().root_system().label(),
            spec.subset_text()
        ));
        AmbientOrder { spec, tag }
    }

    pub fn spec(&self) -> &Arc<ParabolicSpec> {
        &self.spec
    }

    fn key(&self, b: &LieBasisElement) -> (Block, u8, i64, crate::Root, u8) {
        let block = self.spec.classify(b);
        match *b {
            LieBasisElement::RootVector { root, n } => (block, 0, n, root, 0),
            LieBasisElement::CartanLoop { i, n } => (block, 0, n, crate::Root::ZERO, i),
            LieBasisElement::Central => (block, 1, 0, crate::Root::ZERO, 0),
            LieBasisElement::Derivation => (block, 2, 0, crate::Root::ZERO, 0),
        }
    }
}

impl PbwRules for AmbientOrder {
    type Gen = LieBasisElement;

    fn order(&self, a: &LieBasisElement, b: &LieBasisElement) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    fn bracket(&self, a: &LieBasisElement, b: &LieBasisElement) -> Vec<(LieBasisElement, Q)> {
        self.spec.algebra().bracket_basis(a, b).terms().map(|(k, c)| (*k, c.clone())).collect()
    }

    fn tag(&self) -> OrderTag {
        self.tag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::parabolic_from_subset;
    use crate::rational::q;
    use crate::AffineAlgebra;

    fn engine(label: &str, s: &[usize]) -> Straightener<AmbientOrder> {
        let alg = Arc::new(AffineAlgebra::new(label).unwrap());
        Straightener::new(AmbientOrder::new(Arc::new(parabolic_from_subset(alg, s).unwrap())))
    }

    fn b(s: &str) -> LieBasisElement {
        s.parse().unwrap()
    }

    fn mono(e: &Straightener<AmbientOrder>, s: &str) -> Monomial<LieBasisElement> {
        let m = parse_monomial(s, |t| t.parse()).unwrap();
        assert!(e.is_normal(&m), "{s}");
        m
    }

    #[test]
    fn swap_with_bracket_term() {
        let e = engine("A1", &[]);
        // h1@-2 precedes f@-1 only when both are in the Levi block; here f is
        // radical_minus so it comes first and the word is already ordered.
        let got = e.normal_order(&[b("e[-a1]@-1"), b("h1@-2")]);
        assert_eq!(got.len(), 1);
        let got = e.normal_order(&[b("h1@-2"), b("e[-a1]@-1")]);
        // h f = f h + [h, f] = f h - 2 f⊗t⁻³
        assert_eq!(got.coeff(&mono(&e, "e[-a1]@-1 h1@-2")), q(1));
        assert_eq!(got.coeff(&mono(&e, "e[-a1]@-3")), q(-2));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn heisenberg_swap() {
        let e = engine("A1", &[]);
        let got = e.normal_order(&[b("h1@2"), b("h1@-2")]);
        assert_eq!(got.coeff(&mono(&e, "h1@-2 h1@2")), q(1));
        assert_eq!(got.coeff(&mono(&e, "c")), q(4));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn ordered_word_is_fixed() {
        let e = engine("A2", &[0]);
        let m = mono(&e, "e[-a2]@-1^2 e[-a1-a2]@0 h1@-1 e[a1]@2");
        let got = e.normal_order(&m.letters());
        assert_eq!(got.len(), 1);
        assert_eq!(got.coeff(&m), q(1));
    }

    #[test]
    fn block_separation() {
        let e = engine("A2", &[0]);
        let sp = e.rules().spec().clone();
        let basis = sp.algebra().basis_window(-2, 2);
        for x in &basis {
            for y in &basis {
                if sp.classify(x) < sp.classify(y) {
                    assert_eq!(e.rules().order(x, y), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn tag_mismatch_rejected() {
        let e1 = engine("A1", &[]);
        let e2 = engine("A2", &[]);
        let x = e1.normal_order(&[b("h1@1")]);
        let y = e2.normal_order(&[b("h1@1")]);
        assert!(matches!(e1.multiply(&x, &y), Err(Error::OrderTagMismatch)));
    }

    #[test]
    fn monomial_text_roundtrip() {
        let e = engine("A2", &[0]);
        for s in ["1", "e[-a2]@-1^2 h1@0", "e[-a1-a2]@0 c^3 d"] {
            assert_eq!(mono(&e, s).to_string(), s);
        }
        assert!(parse_monomial::<LieBasisElement>("h1@0^0", |t| t.parse()).is_err());
    }
}
