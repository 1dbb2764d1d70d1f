//! The untwisted affine algebra `g ⊗ C[t, t⁻¹] ⊕ Cc ⊕ Cd` for `g = sl(r+1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::roots::{build_root_system, AffineWeight, FiniteRootSystem, Root};

/// A canonical basis element of the affine algebra.
///
/// Cartan indices are 0-based here and 1-based in text (`h1@2` is `h_1 ⊗ t²`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LieBasisElement {
    RootVector { root: Root, n: i64 },
    CartanLoop { i: u8, n: i64 },
    Central,
    Derivation,
}

impl LieBasisElement {
    pub fn root(root: Root, n: i64) -> Self {
        LieBasisElement::RootVector { root, n }
    }

    pub fn cartan(i: usize, n: i64) -> Self {
        LieBasisElement::CartanLoop { i: i as u8, n }
    }

    /// Loop degree; zero for `c` and `d`.
    pub fn degree(&self) -> i64 {
        match *self {
            LieBasisElement::RootVector { n, .. } | LieBasisElement::CartanLoop { n, .. } => n,
            _ => 0,
        }
    }

    pub fn grade(&self, rank: usize) -> AffineWeight {
        match *self {
            LieBasisElement::RootVector { root, n } => AffineWeight::from_root(&root, rank, n),
            LieBasisElement::CartanLoop { n, .. } => AffineWeight { finite: vec![0; rank], delta: n },
            _ => AffineWeight::zero(rank),
        }
    }

    /// Negative imaginary: `h_i ⊗ t^n` with `n < 0`.
    pub fn is_negative_imaginary(&self) -> bool {
        matches!(self, LieBasisElement::CartanLoop { n, .. } if *n < 0)
    }
}

impl fmt::Display for LieBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieBasisElement::RootVector { root, n } => write!(f, "e[{root}]@{n}"),
            LieBasisElement::CartanLoop { i, n } => write!(f, "h{}@{n}", i + 1),
            LieBasisElement::Central => write!(f, "c"),
            LieBasisElement::Derivation => write!(f, "d"),
        }
    }
}

pub(crate) fn split_degree(s: &str) -> Result<(&str, i64)> {
    let (head, n) = s
        .rsplit_once('@')
        .ok_or_else(|| Error::Parse(format!("missing loop degree in `{s}`")))?;
    let n = n.parse().map_err(|_| Error::Parse(format!("bad loop degree in `{s}`")))?;
    Ok((head, n))
}

pub(crate) fn parse_index(s: &str, whole: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(Error::Parse(format!("bad index in `{whole}`"))),
    }
}

impl FromStr for LieBasisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "c" => return Ok(LieBasisElement::Central),
            "d" => return Ok(LieBasisElement::Derivation),
            _ => {}
        }
        let (head, n) = split_degree(s)?;
        if let Some(inner) = head.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
            let root: Root = inner.parse()?;
            if root.is_zero() {
                return Err(Error::Parse(format!("zero root in `{s}`")));
            }
            Ok(LieBasisElement::RootVector { root, n })
        } else if let Some(idx) = head.strip_prefix('h') {
            Ok(LieBasisElement::cartan(parse_index(idx, s)?, n))
        } else {
            Err(Error::Parse(format!("unknown basis element `{s}`")))
        }
    }
}

/// A finite rational combination of basis elements. Zero coefficients are
/// never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct LieElement(BTreeMap<LieBasisElement, Q>);

impl LieElement {
    pub fn zero() -> Self {
        LieElement(BTreeMap::new())
    }

    pub fn basis(b: LieBasisElement) -> Self {
        let mut m = BTreeMap::new();
        m.insert(b, Q::one());
        LieElement(m)
    }

    pub fn from_terms<I: IntoIterator<Item = (LieBasisElement, Q)>>(terms: I) -> Self {
        let mut x = LieElement::zero();
        for (b, c) in terms {
            x.add_term(b, c);
        }
        x
    }

    pub fn add_term(&mut self, b: LieBasisElement, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(b).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, b: &LieBasisElement) -> Q {
        self.0.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieBasisElement, &Q)> {
        self.0.iter()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LieElement::zero();
        }
        LieElement(self.0.iter().map(|(b, x)| (*b, x * c)).collect())
    }

    pub fn add(&self, other: &LieElement) -> Self {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> Self {
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(*b, -c.clone());
        }
        out
    }

    /// The single grade of a homogeneous element, or `None`.
    pub fn homogeneous_grade(&self, rank: usize) -> Option<AffineWeight> {
        let mut it = self.0.keys().map(|b| b.grade(rank));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{}*{b}", fmt_q(c))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LieElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut x = LieElement::zero();
        if s == "0" {
            return Ok(x);
        }
        for term in s.split(" + ") {
            let (c, b) = match term.split_once('*') {
                Some((c, b)) => (parse_q(c)?, b),
                None => (Q::one(), term),
            };
            x.add_term(b.parse()?, c);
        }
        Ok(x)
    }
}

/// Structure constants and invariant form of the finite algebra on the basis
/// `e_φ` (roots in [`FiniteRootSystem::roots`] order) followed by `h_1..h_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    bracket: Vec<Vec<(usize, Q)>>,
    form: Vec<Q>,
}

/// `E_pq` as the root it spans in `sl(r+1)`.
fn matrix_unit_root(p: usize, q: usize) -> Root {
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let mut c = [0i8; crate::roots::MAX_RANK];
    for slot in c.iter_mut().take(hi).skip(lo) {
        *slot = if p < q { 1 } else { -1 };
    }
    Root(c)
}

impl StructureTable {
    /// Realizes the finite algebra as traceless `(r+1)×(r+1)` matrices:
    /// `e_φ ↦ E_pq` for the root of `E_pq`, `h_i ↦ E_ii − E_{i+1,i+1}`,
    /// with the trace form.
    pub fn for_type_a(rs: &FiniteRootSystem) -> Self {
        let r = rs.rank();
        let n = r + 1;
        let roots = rs.roots();
        let dim = roots.len() + r;

        let matrix = |idx: usize| -> Vec<i64> {
            let mut m = vec![0i64; n * n];
            if idx < roots.len() {
                let (p, q) = (0..n)
                    .flat_map(|p| (0..n).map(move |q| (p, q)))
                    .find(|&(p, q)| p != q && matrix_unit_root(p, q) == roots[idx])
                    .expect("every root is a matrix unit");
                m[p * n + q] = 1;
            } else {
                let i = idx - roots.len();
                m[i * n + i] = 1;
                m[(i + 1) * n + i + 1] = -1;
            }
            m
        };
        let mats: Vec<Vec<i64>> = (0..dim).map(matrix).collect();
        let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    if a[i * n + k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i * n + j] += a[i * n + k] * b[k * n + j];
                    }
                }
            }
            out
        };

        let mut bracket = Vec::with_capacity(dim * dim);
        let mut form = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let ab = mul(&mats[a], &mats[b]);
                let ba = mul(&mats[b], &mats[a]);
                let comm: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
                form.push(q((0..n).map(|i| ab[i * n + i]).sum()));

                let mut terms = Vec::new();
                for p in 0..n {
                    for qq in 0..n {
                        let v = comm[p * n + qq];
                        if p != qq && v != 0 {
                            let idx = rs.root_index(&matrix_unit_root(p, qq)).expect("root");
                            terms.push((idx, q(v)));
                        }
                    }
                }
                // diag(d) = Σ c_k h_k with c_k = d_0 + ... + d_k.
                let mut acc = 0;
                for k in 0..r {
                    acc += comm[k * n + k];
                    if acc != 0 {
                        terms.push((roots.len() + k, q(acc)));
                    }
                }
                terms.sort_by_key(|t| t.0);
                bracket.push(terms);
            }
        }
        StructureTable { dim, bracket, form }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.bracket[a * self.dim + b]
    }

    pub fn form(&self, a: usize, b: usize) -> &Q {
        &self.form[a * self.dim + b]
    }

    /// Overwrites the coefficient of basis element `k` in `[a, b]`. Used to
    /// build deliberately inconsistent tables for testing the self-test.
    pub fn set_bracket_coefficient(&mut self, a: usize, b: usize, k: usize, value: Q) {
        let terms = &mut self.bracket[a * self.dim + b];
        terms.retain(|t| t.0 != k);
        if !value.is_zero() {
            terms.push((k, value));
            terms.sort_by_key(|t| t.0);
        }
    }
}

/// The affine algebra over a finite root system of type A.
#[derive(Clone, Debug)]
pub struct AffineAlgebra {
    rs: FiniteRootSystem,
    table: StructureTable,
}

impl AffineAlgebra {
    pub fn new(label: &str) -> Result<Self> {
        let rs = build_root_system(label)?;
        let table = StructureTable::for_type_a(&rs);
        Ok(AffineAlgebra { rs, table })
    }

    pub fn with_table(rs: FiniteRootSystem, table: StructureTable) -> Result<Self> {
        let expected = rs.roots().len() + rs.rank();
        if table.dim() != expected {
            return Err(Error::DimensionMismatch { expected, got: table.dim() });
        }
        Ok(AffineAlgebra { rs, table })
    }

    pub fn root_system(&self) -> &FiniteRootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn contains(&self, b: &LieBasisElement) -> bool {
        match b {
            LieBasisElement::RootVector { root, .. } => self.rs.is_root(root),
            LieBasisElement::CartanLoop { i, .. } => (*i as usize) < self.rs.rank(),
            _ => true,
        }
    }

    fn check(&self, b: &LieBasisElement) -> Result<()> {
        if self.contains(b) {
            Ok(())
        } else {
            Err(Error::ForeignElement(b.to_string()))
        }
    }

    /// Index of the finite part of a loop element, with its loop degree.
    pub fn finite_index(&self, b: &LieBasisElement) -> Option<(usize, i64)> {
        match *b {
            LieBasisElement::RootVector { root, n } => self.rs.root_index(&root).map(|i| (i, n)),
            LieBasisElement::CartanLoop { i, n } => Some((self.rs.roots().len() + i as usize, n)),
            _ => None,
        }
    }

    pub fn finite_element(&self, idx: usize, n: i64) -> LieBasisElement {
        let roots = self.rs.roots();
        if idx < roots.len() {
            LieBasisElement::RootVector { root: roots[idx], n }
        } else {
            LieBasisElement::cartan(idx - roots.len(), n)
        }
    }

    /// `[a, b]` for basis elements already known to belong to the algebra.
    pub fn bracket_basis(&self, a: &LieBasisElement, b: &LieBasisElement) -> LieElement {
        use LieBasisElement::*;
        match (a, b) {
            (Central, _) | (_, Central) | (Derivation, Derivation) => LieElement::zero(),
            (Derivation, x) => LieElement::basis(*x).scale(&q(x.degree())),
            (x, Derivation) => LieElement::basis(*x).scale(&q(-x.degree())),
            _ => {
                let (ia, m) = self.finite_index(a).expect("loop element");
                let (ib, n) = self.finite_index(b).expect("loop element");
                let mut out = LieElement::from_terms(
                    self.table.bracket(ia, ib).iter().map(|(k, c)| (self.finite_element(*k, m + n), c.clone())),
                );
                if m + n == 0 && m != 0 {
                    out.add_term(Central, q(m) * self.table.form(ia, ib));
                }
                out
            }
        }
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        for (b, _) in x.terms().chain(y.terms()) {
            self.check(b)?;
        }
        let mut out = LieElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let c = ca * cb;
                for (k, v) in self.bracket_basis(a, b).terms() {
                    out.add_term(*k, v * &c);
                }
            }
        }
        Ok(out)
    }

    /// The invariant form on the loop part: `(a⊗t^m | b⊗t^n) = δ_{m+n,0}(a|b)`.
    pub fn loop_form(&self, a: &LieBasisElement, b: &LieBasisElement) -> Q {
        match (self.finite_index(a), self.finite_index(b)) {
            (Some((ia, m)), Some((ib, n))) if m + n == 0 => self.table.form(ia, ib).clone(),
            _ => Q::zero(),
        }
    }

    /// Finite basis (loop degree zero), roots first, then Cartans.
    pub fn finite_basis(&self) -> Vec<LieBasisElement> {
        (0..self.table.dim()).map(|i| self.finite_element(i, 0)).collect()
    }

    /// All root vectors and Cartan loops with `lo ≤ n ≤ hi`, then `c`, `d`.
    pub fn basis_window(&self, lo: i64, hi: i64) -> Vec<LieBasisElement> {
        let mut out = Vec::new();
        for n in lo..=hi {
            for i in 0..self.table.dim() {
                out.push(self.finite_element(i, n));
            }
        }
        out.push(LieBasisElement::Central);
        out.push(LieBasisElement::Derivation);
        out
    }

    pub fn grade(&self, b: &LieBasisElement) -> AffineWeight {
        b.grade(self.rank())
    }
}

/// Basis of the Heisenberg subalgebra in a loop-degree window: `h_i ⊗ t^n`
/// for `n ≠ 0`, then `c`.
pub fn heisenberg_basis(rs: &FiniteRootSystem, lo: i64, hi: i64) -> Vec<LieBasisElement> {
    let mut out = Vec::new();
    for n in lo..=hi {
        if n == 0 {
            continue;
        }
        for i in 0..rs.rank() {
            out.push(LieBasisElement::cartan(i, n));
        }
    }
    out.push(LieBasisElement::Central);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn e(s: &str) -> LieBasisElement {
        s.parse().unwrap()
    }

    fn x(s: &str) -> LieElement {
        s.parse().unwrap()
    }

    /// Independent 2×2 oracle for sl2: e=[[0,1],[0,0]], f=[[0,0],[1,0]], h=diag(1,-1).
    fn sl2_oracle(a: usize, b: usize) -> ([[i64; 2]; 2], i64) {
        let m = |i: usize| match i {
            0 => [[0, 1], [0, 0]],
            1 => [[0, 0], [1, 0]],
            _ => [[1, 0], [0, -1]],
        };
        let (x, y) = (m(a), m(b));
        let mut comm = [[0; 2]; 2];
        let mut tr = 0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    comm[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
                }
            }
            for k in 0..2 {
                tr += x[i][k] * y[k][i];
            }
        }
        (comm, tr)
    }

    #[test]
    fn sl2_table_matches_oracle() {
        let alg = AffineAlgebra::new("A1").unwrap();
        let names = ["e[a1]@0", "e[-a1]@0", "h1@0"];
        for a in 0..3 {
            for b in 0..3 {
                let (comm, tr) = sl2_oracle(a, b);
                let mut want = LieElement::zero();
                want.add_term(e("e[a1]@0"), q(comm[0][1]));
                want.add_term(e("e[-a1]@0"), q(comm[1][0]));
                want.add_term(e("h1@0"), q(comm[0][0]));
                assert_eq!(alg.bracket_basis(&e(names[a]), &e(names[b])), want);
                assert_eq!(alg.loop_form(&e(names[a]), &e(names[b])), q(tr));
            }
        }
    }

    #[test]
    fn loop_brackets() {
        let alg = AffineAlgebra::new("A1").unwrap();
        let br = |a: &str, b: &str| alg.bracket(&x(a), &x(b)).unwrap();
        assert_eq!(br("e[a1]@2", "e[-a1]@-2"), x("h1@0 + 2*c"));
        assert_eq!(br("d", "e[-a1]@-3"), x("-3*e[-a1]@-3"));
        assert_eq!(br("c", "e[a1]@5"), LieElement::zero());
        for m in -4..=4 {
            let want = LieElement::basis(LieBasisElement::Central).scale(&q(2 * m));
            assert_eq!(br(&format!("h1@{m}"), &format!("h1@{}", -m)), want);
        }
        assert_eq!(br("e[-a1]@-1", "h1@-2"), x("2*e[-a1]@-3"));
    }

    #[test]
    fn a2_brackets() {
        let alg = AffineAlgebra::new("A2").unwrap();
        let br = |a: &str, b: &str| alg.bracket(&x(a), &x(b)).unwrap();
        // E_12 E_23 - E_23 E_12 = E_13.
        assert_eq!(br("e[a1]@1", "e[a2]@-2"), x("e[a1+a2]@-1"));
        assert_eq!(br("e[a1+a2]@0", "e[-a1-a2]@0"), x("h1@0 + h2@0"));
        assert_eq!(br("h1@0", "e[a2]@3"), x("-1*e[a2]@3"));
        assert_eq!(br("h2@1", "h1@-1"), x("-1*c"));
    }

    #[test]
    fn foreign_elements_rejected() {
        let alg = AffineAlgebra::new("A1").unwrap();
        assert!(matches!(alg.bracket(&x("e[a2]@0"), &x("h1@0")), Err(Error::ForeignElement(_))));
        assert!(alg.bracket(&x("h2@0"), &x("c")).is_err());
    }

    #[test]
    fn text_roundtrip() {
        for s in ["e[a1+a2]@-3", "e[-a1]@0", "h1@2", "c", "d", "h2@-1"] {
            assert_eq!(e(s).to_string(), s);
        }
        let v = x("1/2*h1@2 + -3*e[a1+a2]@0 + c");
        assert_eq!(v.to_string().parse::<LieElement>().unwrap(), v);
        assert_eq!(v.coeff(&e("h1@2")), qr(1, 2));
        assert!("e[0]@1".parse::<LieBasisElement>().is_err());
        assert!("h0@1".parse::<LieBasisElement>().is_err());
        assert!("q@1".parse::<LieBasisElement>().is_err());
    }

    #[test]
    fn heisenberg_window() {
        let a1 = build_root_system("A1").unwrap();
        let got: Vec<String> = heisenberg_basis(&a1, -2, 2).iter().map(|b| b.to_string()).collect();
        assert_eq!(got, ["h1@-2", "h1@-1", "h1@1", "h1@2", "c"]);
        let a2 = build_root_system("A2").unwrap();
        let got: Vec<String> = heisenberg_basis(&a2, 1, 1).iter().map(|b| b.to_string()).collect();
        assert_eq!(got, ["h1@1", "h2@1", "c"]);

        let alg = AffineAlgebra::new("A2").unwrap();
        let hb = heisenberg_basis(&a2, -3, 3);
        for a in &hb {
            for b in &hb {
                let br = alg.bracket_basis(a, b);
                assert!(br.terms().all(|(k, _)| *k == LieBasisElement::Central));
            }
        }
    }

    #[test]
    fn grades_add() {
        let alg = AffineAlgebra::new("A2").unwrap();
        let basis = alg.basis_window(-2, 2);
        for a in &basis {
            for b in &basis {
                let br = alg.bracket_basis(a, b);
                if !br.is_zero() {
                    let g = br.homogeneous_grade(2).unwrap();
                    assert_eq!(g, &alg.grade(a) + &alg.grade(b), "[{a}, {b}]");
                }
            }
        }
    }

    #[test]
    fn corrupted_table_differs() {
        let alg = AffineAlgebra::new("A1").unwrap();
        let mut t = alg.table().clone();
        t.set_bracket_coefficient(0, 1, 2, q(3));
        let bad = AffineAlgebra::with_table(alg.root_system().clone(), t).unwrap();
        assert_eq!(bad.bracket_basis(&e("e[a1]@0"), &e("e[-a1]@0")), x("3*h1@0"));
    }
}
