//! Parabolic subalgebras given by a subset `S` of simple roots, and the
//! adapted basis of their Levi factor.
//!
//! The Levi factor contains every root vector whose root lies in `span(S)`,
//! the whole loop Cartan `h ⊗ C[t, t⁻¹]`, `c` and `d`. Its Cartan part is
//! split as `h_l ⊕ h_l^⊥` where `h_l = span{h_s : s ∈ S}` and `h_l^⊥` is the
//! form-orthogonal complement, spanned by primitive integral vectors `p_k`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::affine::{parse_index, split_degree, AffineAlgebra, LieBasisElement, LieElement};
use crate::error::{Error, Result};
use crate::linalg::{primitive, Matrix};
use crate::rational::{q, Q};
use crate::roots::Root;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    RadicalMinus,
    Levi,
    RadicalPlus,
}

impl Block {
    pub fn name(self) -> &'static str {
        match self {
            Block::RadicalMinus => "radical_minus",
            Block::Levi => "levi",
            Block::RadicalPlus => "radical_plus",
        }
    }
}

/// Basis of the Levi factor adapted to `h_l ⊕ h_l^⊥`.
///
/// `LeviCartan { s, n }` is `h_s ⊗ t^n` for `s ∈ S`; `PerpCartan { k, n }` is
/// `p_k ⊗ t^n`. Indices are 0-based; text is 1-based (`h1@2`, `p1@-1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LeviGen {
    Root { root: Root, n: i64 },
    LeviCartan { s: u8, n: i64 },
    PerpCartan { k: u8, n: i64 },
    Central,
    Derivation,
}

impl LeviGen {
    pub fn degree(&self) -> i64 {
        match *self {
            LeviGen::Root { n, .. } | LeviGen::LeviCartan { n, .. } | LeviGen::PerpCartan { n, .. } => n,
            _ => 0,
        }
    }

    pub fn is_perp(&self) -> bool {
        matches!(self, LeviGen::PerpCartan { .. })
    }
}

impl fmt::Display for LeviGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeviGen::Root { root, n } => write!(f, "e[{root}]@{n}"),
            LeviGen::LeviCartan { s, n } => write!(f, "h{}@{n}", s + 1),
            LeviGen::PerpCartan { k, n } => write!(f, "p{}@{n}", k + 1),
            LeviGen::Central => write!(f, "c"),
            LeviGen::Derivation => write!(f, "d"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicSpec {
    algebra: Arc<AffineAlgebra>,
    levi: Vec<usize>,
    perp: Vec<Vec<Q>>,
    /// Columns: `h_s` for `s ∈ S`, then `p_k`, in ambient `h_i` coordinates.
    from_adapted: Matrix,
    to_adapted: Matrix,
}

/// Builds the parabolic for a subset of simple roots (0-based indices).
pub fn parabolic_from_subset(algebra: Arc<AffineAlgebra>, subset: &[usize]) -> Result<ParabolicSpec> {
    let r = algebra.rank();
    let mut levi = subset.to_vec();
    levi.sort_unstable();
    levi.dedup();
    if levi.len() != subset.len() {
        return Err(Error::InvalidSubset(format!("repeated simple root in {subset:?}")));
    }
    if let Some(bad) = levi.iter().find(|&&s| s >= r) {
        return Err(Error::InvalidSubset(format!(
            "simple root index {} out of range for {}",
            bad + 1,
            algebra.root_system().label()
        )));
    }

    // (h_s | h_i) is the Cartan matrix in the simply-laced normalization.
    let cartan = algebra.root_system().cartan_matrix();
    let perp: Vec<Vec<Q>> = if levi.is_empty() {
        (0..r).map(|k| (0..r).map(|i| q((i == k) as i64)).collect()).collect()
    } else {
        let rows = levi.iter().map(|&s| cartan[s].iter().map(|&x| q(x)).collect()).collect();
        Matrix::from_rows(rows)?.nullspace().iter().map(|v| primitive(v)).collect()
    };

    let mut from_adapted = Matrix::zeros(r, r);
    for (col, &s) in levi.iter().enumerate() {
        from_adapted[(s, col)] = q(1);
    }
    for (k, p) in perp.iter().enumerate() {
        for i in 0..r {
            from_adapted[(i, levi.len() + k)] = p[i].clone();
        }
    }
    let to_adapted = from_adapted.inverse()?;
    Ok(ParabolicSpec { algebra, levi, perp, from_adapted, to_adapted })
}

impl ParabolicSpec {
    pub fn algebra(&self) -> &Arc<AffineAlgebra> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// `S`, sorted, 0-based.
    pub fn levi_roots(&self) -> &[usize] {
        &self.levi
    }

    pub fn in_levi(&self, s: usize) -> bool {
        self.levi.contains(&s)
    }

    /// `p_k` in coordinates on `h_1..h_r`.
    pub fn perp_basis(&self) -> &[Vec<Q>] {
        &self.perp
    }

    pub fn perp_dim(&self) -> usize {
        self.perp.len()
    }

    pub fn is_levi_root(&self, root: &Root) -> bool {
        (0..self.rank()).all(|i| root.coeff(i) == 0 || self.in_levi(i))
    }

    /// Sum of the coefficients of `root` on simple roots outside `S`.
    pub fn outside_height(&self, root: &Root) -> i64 {
        (0..self.rank()).filter(|i| !self.in_levi(*i)).map(|i| root.coeff(i)).sum()
    }

    pub fn classify(&self, b: &LieBasisElement) -> Block {
        match b {
            LieBasisElement::RootVector { root, .. } => {
                let h = self.outside_height(root);
                if h > 0 {
                    Block::RadicalPlus
                } else if h < 0 {
                    Block::RadicalMinus
                } else {
                    Block::Levi
                }
            }
            _ => Block::Levi,
        }
    }

    /// `(p_k | p_l)`.
    pub fn perp_form(&self, k: usize, l: usize) -> Q {
        let cartan = self.algebra.root_system().cartan_matrix();
        let mut acc = Q::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if cartan[i][j] != 0 {
                    acc += &self.perp[k][i] * &self.perp[l][j] * q(cartan[i][j]);
                }
            }
        }
        acc
    }

    /// `(h_s | h_s)`.
    pub fn levi_cartan_norm(&self) -> Q {
        q(2)
    }

    /// `α(p_k)` for every `k`.
    pub fn perp_pairing(&self, finite: &[i64]) -> Vec<Q> {
        let cartan = self.algebra.root_system().cartan_matrix();
        self.perp
            .iter()
            .map(|p| {
                let mut acc = Q::zero();
                for (i, &c) in finite.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for j in 0..self.rank() {
                        if cartan[j][i] != 0 {
                            acc += &p[j] * q(c * cartan[j][i]);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Expresses a Levi element of the ambient basis in the adapted basis.
    pub fn to_adapted(&self, b: &LieBasisElement) -> Result<Vec<(LeviGen, Q)>> {
        Ok(match *b {
            LieBasisElement::RootVector { root, n } => {
                if !self.is_levi_root(&root) {
                    return Err(Error::NotActing(format!("{b} is not in the Levi factor")));
                }
                vec![(LeviGen::Root { root, n }, q(1))]
            }
            LieBasisElement::CartanLoop { i, n } => {
                let i = i as usize;
                let mut out = Vec::new();
                for row in 0..self.rank() {
                    let c = &self.to_adapted[(row, i)];
                    if c.is_zero() {
                        continue;
                    }
                    let g = if row < self.levi.len() {
                        LeviGen::LeviCartan { s: self.levi[row] as u8, n }
                    } else {
                        LeviGen::PerpCartan { k: (row - self.levi.len()) as u8, n }
                    };
                    out.push((g, c.clone()));
                }
                out
            }
            LieBasisElement::Central => vec![(LeviGen::Central, q(1))],
            LieBasisElement::Derivation => vec![(LeviGen::Derivation, q(1))],
        })
    }

    pub fn to_ambient(&self, g: &LeviGen) -> LieElement {
        match *g {
            LeviGen::Root { root, n } => LieElement::basis(LieBasisElement::RootVector { root, n }),
            LeviGen::LeviCartan { s, n } => LieElement::basis(LieBasisElement::CartanLoop { i: s, n }),
            LeviGen::PerpCartan { k, n } => {
                let col = self.levi.len() + k as usize;
                LieElement::from_terms(
                    (0..self.rank()).map(|i| (LieBasisElement::cartan(i, n), self.from_adapted[(i, col)].clone())),
                )
            }
            LeviGen::Central => LieElement::basis(LieBasisElement::Central),
            LeviGen::Derivation => LieElement::basis(LieBasisElement::Derivation),
        }
    }

    pub fn adapted_element(&self, x: &LieElement) -> Result<Vec<(LeviGen, Q)>> {
        let mut acc: std::collections::BTreeMap<LeviGen, Q> = Default::default();
        for (b, c) in x.terms() {
            for (g, v) in self.to_adapted(b)? {
                *acc.entry(g).or_insert_with(Q::zero) += v * c;
            }
        }
        Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// Bracket of adapted generators, computed in the ambient basis.
    pub fn bracket_levi(&self, a: &LeviGen, b: &LeviGen) -> Vec<(LeviGen, Q)> {
        let br = self
            .algebra
            .bracket(&self.to_ambient(a), &self.to_ambient(b))
            .expect("adapted generators belong to the algebra");
        self.adapted_element(&br).expect("the Levi factor is a subalgebra")
    }

    pub fn is_valid_levi_gen(&self, g: &LeviGen) -> bool {
        match g {
            LeviGen::Root { root, .. } => self.algebra.root_system().is_root(root) && self.is_levi_root(root),
            LeviGen::LeviCartan { s, .. } => self.in_levi(*s as usize),
            LeviGen::PerpCartan { k, .. } => (*k as usize) < self.perp_dim(),
            _ => true,
        }
    }

    pub fn parse_levi_gen(&self, s: &str) -> Result<LeviGen> {
        let s = s.trim();
        let g = match s {
            "c" => LeviGen::Central,
            "d" => LeviGen::Derivation,
            _ => {
                let (head, n) = split_degree(s)?;
                if let Some(inner) = head.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
                    LeviGen::Root { root: inner.parse()?, n }
                } else if let Some(idx) = head.strip_prefix('h') {
                    LeviGen::LeviCartan { s: parse_index(idx, s)? as u8, n }
                } else if let Some(idx) = head.strip_prefix('p') {
                    LeviGen::PerpCartan { k: parse_index(idx, s)? as u8, n }
                } else {
                    return Err(Error::Parse(format!("unknown Levi generator `{s}`")));
                }
            }
        };
        if !self.is_valid_levi_gen(&g) {
            return Err(Error::Parse(format!("`{s}` is not a Levi generator for S = {}", self.subset_text())));
        }
        Ok(g)
    }

    /// `{a1,a3}` style rendering of `S`.
    pub fn subset_text(&self) -> String {
        let items: Vec<String> = self.levi.iter().map(|s| format!("a{}", s + 1)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Connected components of the Dynkin subdiagram on `S`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &s in &self.levi {
            match out.last_mut() {
                Some(c) if *c.last().unwrap() + 1 == s => c.push(s),
                _ => out.push(vec![s]),
            }
        }
        out
    }

    /// Affine simple root vectors of the loop algebra on `span(S)`: `e_{α_s}`
    /// at degree 0 and `e_{-θ_C}` at degree 1 for each component `C`.
    pub fn affine_simple_generators(&self) -> Vec<LeviGen> {
        let mut out = Vec::new();
        for comp in self.components() {
            for &s in &comp {
                out.push(LeviGen::Root { root: Root::simple(s), n: 0 });
            }
            let mut theta = Root::ZERO;
            for &s in &comp {
                theta.0[s] = 1;
            }
            out.push(LeviGen::Root { root: -theta, n: 1 });
        }
        out
    }

    /// Membership in the positive part of the loop algebra on `span(S)`.
    pub fn is_affine_positive(&self, g: &LeviGen) -> bool {
        match *g {
            LeviGen::Root { root, n } => n > 0 || (n == 0 && root.is_positive()),
            LeviGen::LeviCartan { n, .. } => n > 0,
            _ => false,
        }
    }

    pub fn is_affine_negative(&self, g: &LeviGen) -> bool {
        match *g {
            LeviGen::Root { root, n } => n < 0 || (n == 0 && !root.is_positive()),
            LeviGen::LeviCartan { n, .. } => n < 0,
            _ => false,
        }
    }

    /// Levi root vectors in the root system order.
    pub fn levi_root_list(&self) -> Vec<Root> {
        self.algebra.root_system().roots().iter().copied().filter(|r| self.is_levi_root(r)).collect()
    }

    /// Radical root vectors of one sign, in the root system order.
    pub fn radical_roots(&self, block: Block) -> Vec<Root> {
        self.algebra
            .root_system()
            .roots()
            .iter()
            .copied()
            .filter(|r| self.classify(&LieBasisElement::root(*r, 0)) == block)
            .collect()
    }
}
