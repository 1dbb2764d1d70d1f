//! Finite root data of type A and the affine weight lattice.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{q, Q};

/// Largest supported rank.
pub const MAX_RANK: usize = 8;

/// An element of the finite root lattice, stored by its coordinates on the
/// simple roots. Unused trailing coordinates are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub [i8; MAX_RANK]);

impl Root {
    pub const ZERO: Root = Root([0; MAX_RANK]);

    pub fn simple(i: usize) -> Root {
        let mut c = [0; MAX_RANK];
        c[i] = 1;
        Root(c)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<Root> {
        if coeffs.len() > MAX_RANK {
            return Err(Error::DimensionMismatch { expected: MAX_RANK, got: coeffs.len() });
        }
        let mut c = [0i8; MAX_RANK];
        for (slot, &x) in c.iter_mut().zip(coeffs) {
            *slot = i8::try_from(x).map_err(|_| Error::Parse(format!("coefficient {x} out of range")))?;
        }
        Ok(Root(c))
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i] as i64
    }

    pub fn coeffs(&self, rank: usize) -> Vec<i64> {
        self.0[..rank].iter().map(|&x| x as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    /// Positive means every coefficient is non-negative and one is positive.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn checked_add(&self, other: &Root) -> Option<Root> {
        let mut c = [0i8; MAX_RANK];
        for i in 0..MAX_RANK {
            c[i] = self.0[i].checked_add(other.0[i])?;
        }
        Some(Root(c))
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        let mut c = self.0;
        for x in c.iter_mut() {
            *x = -*x;
        }
        Root(c)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root({self})")
    }
}

impl std::str::FromStr for Root {
    type Err = Error;

    /// Parses `a1+a2`, `-a1-2a2`, `0`.
    fn from_str(s: &str) -> Result<Root> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed root `{s}`"));
        if s == "0" {
            return Ok(Root::ZERO);
        }
        let mut c = [0i8; MAX_RANK];
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mag: i64 = if pos == start { 1 } else { s[start..pos].parse().map_err(|_| bad())? };
            if pos >= bytes.len() || bytes[pos] != b'a' {
                return Err(bad());
            }
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = s[start..pos].parse().map_err(|_| bad())?;
            if idx == 0 || idx > MAX_RANK {
                return Err(bad());
            }
            let v = c[idx - 1] as i64 + sign * mag;
            c[idx - 1] = i8::try_from(v).map_err(|_| bad())?;
        }
        Ok(Root(c))
    }
}

/// `φ + nδ`: a finite root-lattice vector plus a multiple of the null root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub finite: Vec<i64>,
    pub delta: i64,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight { finite: vec![0; rank], delta: 0 }
    }

    pub fn from_root(root: &Root, rank: usize, delta: i64) -> Self {
        AffineWeight { finite: root.coeffs(rank), delta }
    }

    pub fn is_zero(&self) -> bool {
        self.delta == 0 && self.finite.iter().all(|&x| x == 0)
    }

    pub fn finite_root(&self) -> Option<Root> {
        Root::from_coeffs(&self.finite).ok()
    }

    /// Real affine root: the finite part is a root of `rs`.
    pub fn is_real_root(&self, rs: &FiniteRootSystem) -> bool {
        self.finite_root().is_some_and(|r| rs.is_root(&r))
    }

    pub fn is_imaginary_root(&self) -> bool {
        self.finite.iter().all(|&x| x == 0) && self.delta != 0
    }
}

impl std::ops::Add for &AffineWeight {
    type Output = AffineWeight;
    fn add(self, o: &AffineWeight) -> AffineWeight {
        AffineWeight {
            finite: self.finite.iter().zip(&o.finite).map(|(a, b)| a + b).collect(),
            delta: self.delta + o.delta,
        }
    }
}

impl std::ops::Neg for &AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        AffineWeight { finite: self.finite.iter().map(|x| -x).collect(), delta: -self.delta }
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = Root::from_coeffs(&self.finite).map_err(|_| fmt::Error)?;
        write!(f, "{r}{:+}δ", self.delta)
    }
}

/// Root data of `sl(rank+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRootSystem {
    label: String,
    rank: usize,
    positive: Vec<Root>,
    roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    form: Matrix,
}

impl FiniteRootSystem {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(Root::simple).collect()
    }

    /// Positive roots by increasing height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Positive roots followed by their negatives, in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form_matrix(&self) -> &Matrix {
        &self.form
    }

    pub fn highest_root(&self) -> Root {
        *self.positive.last().expect("non-empty root system")
    }

    /// Position of `r` in [`Self::roots`].
    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    pub fn form_roots(&self, u: &Root, v: &Root) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let (a, b) = (u.coeff(i), v.coeff(j));
                if a != 0 && b != 0 {
                    acc += &self.form[(i, j)] * q(a * b);
                }
            }
        }
        acc
    }

    /// `φ(h_i) = <φ, α_i^∨>` for the simple coroot `h_i`.
    pub fn pairing_coroot(&self, phi: &Root, i: usize) -> i64 {
        (0..self.rank).map(|j| phi.coeff(j) * self.cartan[i][j]).sum()
    }
}

/// Builds the root system for a label `A1`..`A8`.
pub fn build_root_system(label: &str) -> Result<FiniteRootSystem> {
    let rank: usize = label
        .strip_prefix('A')
        .and_then(|r| r.parse().ok())
        .filter(|r| (1..=MAX_RANK).contains(r))
        .ok_or_else(|| Error::UnsupportedLabel(label.to_string()))?;

    // sl(n+1): the positive roots are the strings α_i + ... + α_j.
    let mut positive = Vec::new();
    for i in 0..rank {
        for j in i..rank {
            let mut c = [0i8; MAX_RANK];
            for slot in c.iter_mut().take(j + 1).skip(i) {
                *slot = 1;
            }
            positive.push(Root(c));
        }
    }
    positive.sort_by_key(|r| (r.height(), std::cmp::Reverse(*r)));
    let roots: Vec<Root> = positive.iter().copied().chain(positive.iter().map(|r| -*r)).collect();

    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    // Simply laced with (θ, θ) = 2: the form on simple roots is the Cartan matrix.
    let form = Matrix::from_rows(cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())?;

    Ok(FiniteRootSystem { label: label.to_string(), rank, positive, roots, cartan, form })
}

/// The normalized invariant form on root-lattice vectors.
pub fn invariant_form(rs: &FiniteRootSystem, u: &[i64], v: &[i64]) -> Result<Q> {
    for x in [u, v] {
        if x.len() != rs.rank {
            return Err(Error::DimensionMismatch { expected: rs.rank, got: x.len() });
        }
    }
    let mut acc = Q::zero();
    for i in 0..rs.rank {
        for j in 0..rs.rank {
            if u[i] != 0 && v[j] != 0 {
                acc += &rs.form[(i, j)] * q(u[i] * v[j]);
            }
        }
    }
    Ok(acc)
}

/// Number of simple roots outside `levi` occurring in the finite part of `w`,
/// counted with multiplicity (absolute values of the coefficients).
pub fn tau_count(w: &AffineWeight, levi: &[usize]) -> u64 {
    w.finite
        .iter()
        .enumerate()
        .filter(|(i, _)| !levi.contains(i))
        .map(|(_, c)| c.unsigned_abs())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(finite: &[i64], delta: i64) -> AffineWeight {
        AffineWeight { finite: finite.to_vec(), delta }
    }

    #[test]
    fn a1_data() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(rs.roots().len(), 2);
        assert_eq!(invariant_form(&rs, &[1], &[1]).unwrap(), q(2));
    }

    #[test]
    fn a2_data() {
        let rs = build_root_system("A2").unwrap();
        let pos: Vec<String> = rs.positive_roots().iter().map(|r| r.to_string()).collect();
        assert_eq!(pos, ["a1", "a2", "a1+a2"]);
        assert_eq!(rs.cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(rs.roots().len(), 6);
        assert_eq!(invariant_form(&rs, &[1, 0], &[0, 1]).unwrap(), q(-1));
    }

    #[test]
    fn a2_highest_root_norm_by_expansion() {
        // (α1+α2, α1+α2) = (α1,α1) + 2(α1,α2) + (α2,α2) = 2 - 2 + 2.
        let rs = build_root_system("A2").unwrap();
        let expanded = q(2) + q(2) * q(-1) + q(2);
        assert_eq!(invariant_form(&rs, &[1, 1], &[1, 1]).unwrap(), expanded);
        assert_eq!(expanded, q(2));
    }

    #[test]
    fn unsupported_label_names_supported_ones() {
        let err = build_root_system("B2").unwrap_err().to_string();
        assert!(err.contains("A1..A8"), "{err}");
        assert!(build_root_system("A0").is_err());
        assert!(build_root_system("A9").is_err());
    }

    #[test]
    fn form_dimension_mismatch() {
        let rs = build_root_system("A2").unwrap();
        assert!(invariant_form(&rs, &[1], &[1, 0]).is_err());
    }

    #[test]
    fn cartan_form_compatibility_all_labels() {
        for r in 1..=MAX_RANK {
            let rs = build_root_system(&format!("A{r}")).unwrap();
            for i in 0..r {
                for j in 0..r {
                    let num = q(2) * &rs.form_matrix()[(i, j)];
                    assert_eq!(num / &rs.form_matrix()[(j, j)], q(rs.cartan_matrix()[i][j]));
                }
            }
            let theta = rs.highest_root();
            assert_eq!(rs.form_roots(&theta, &theta), q(2));
            assert_eq!(rs.roots().len(), r * (r + 1));
            for x in rs.roots() {
                assert!(rs.is_root(&-*x));
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_count(&w(&[1, 1], 0), &[0]), 1);
        assert_eq!(tau_count(&w(&[1, 0], 5), &[0]), 0);
        assert_eq!(tau_count(&w(&[1, 1], 0), &[]), 2);
    }

    #[test]
    fn root_text_roundtrip() {
        for s in ["a1", "-a1-a2", "a2", "2a1+a2", "0"] {
            let r: Root = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("a0".parse::<Root>().is_err());
        assert!("b1".parse::<Root>().is_err());
    }

    #[test]
    fn affine_root_kinds() {
        let rs = build_root_system("A2").unwrap();
        assert!(w(&[1, 1], -3).is_real_root(&rs));
        assert!(!w(&[1, 1], -3).is_imaginary_root());
        assert!(w(&[0, 0], 2).is_imaginary_root());
        assert!(!w(&[0, 0], 0).is_imaginary_root());
        assert!(!w(&[2, 0], 0).is_real_root(&rs));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn tau_additive_same_sign(a in prop::collection::vec(0i64..5, 3),
                                      b in prop::collection::vec(0i64..5, 3),
                                      da in -5i64..5, db in -5i64..5,
                                      neg in any::<bool>()) {
                let s = if neg { -1 } else { 1 };
                let u = w(&a.iter().map(|x| s * x).collect::<Vec<_>>(), da);
                let v = w(&b.iter().map(|x| s * x).collect::<Vec<_>>(), db);
                for levi in [vec![], vec![0], vec![1, 2]] {
                    prop_assert_eq!(tau_count(&(&u + &v), &levi), tau_count(&u, &levi) + tau_count(&v, &levi));
                    prop_assert_eq!(tau_count(&-&u, &levi), tau_count(&u, &levi));
                }
            }
        }
    }
}
