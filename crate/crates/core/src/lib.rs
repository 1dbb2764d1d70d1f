//! Exact symbolic engine for parabolically induced modules over untwisted
//! affine Kac-Moody algebras of type A.
//!
//! The crate is layered bottom-up:
//!
//! * [`roots`]: finite root data, the affine weight lattice and the
//!   τ-statistic used by the descent search.
//! * [`affine`]: the canonical basis of `g ⊗ C[t, t⁻¹] ⊕ Cc ⊕ Cd` and its
//!   exact bracket.
//! * [`parabolic`]: parabolic subalgebras given by a subset of simple roots,
//!   their Levi factors and the Heisenberg complement data.
//! * [`pbw`]: PBW straightening in universal enveloping algebras.
//! * [`modules`]: inducing modules (Whittaker, evaluation, Verma, tensor) and
//!   the induced modules built from them.
//! * [`certify`]: mechanical checks producing re-checkable certificates.
//! * [`cli`]: scenario configs, JSON reports and the batch runner.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod affine;
pub mod certify;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod parabolic;
pub mod pbw;
pub mod rational;
pub mod roots;

pub use affine::{AffineAlgebra, LieBasisElement, LieElement};
pub use error::{Error, Result};
pub use parabolic::{Block, ParabolicSpec};
pub use rational::Q;
pub use roots::{AffineWeight, FiniteRootSystem, Root};
