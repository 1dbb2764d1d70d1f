use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CertificationReport, Verdict};
use crate::affine::{AffineAlgebra, LieElement};
use crate::error::Result;
use crate::rational::Q;

/// Loop-degree windows: pairs use `|n| ≤ pairs`, triples `|n| ≤ triples`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteWindows {
    pub pairs: i64,
    pub triples: i64,
}

impl Default for SuiteWindows {
    fn default() -> Self {
        SuiteWindows { pairs: 3, triples: 2 }
    }
}

impl SuiteWindows {
    /// Narrower windows for larger ranks keep the triple count manageable.
    pub fn for_rank(rank: usize) -> Self {
        match rank {
            0..=2 => SuiteWindows::default(),
            3..=4 => SuiteWindows { pairs: 2, triples: 1 },
            _ => SuiteWindows { pairs: 1, triples: 0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSuite {
    pub label: String,
    pub windows: SuiteWindows,
    pub antisymmetry: usize,
    pub grading: usize,
    pub jacobi: usize,
    pub form_invariance: usize,
    pub failures: Vec<String>,
}

impl AlgebraSuite {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn br(alg: &AffineAlgebra, x: &LieElement, y: &LieElement) -> LieElement {
    alg.bracket(x, y).expect("window elements belong to the algebra")
}

fn form(alg: &AffineAlgebra, x: &LieElement, y: &LieElement) -> Q {
    let mut acc = Q::from_integer(0.into());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            acc += alg.loop_form(a, b) * ca * cb;
        }
    }
    acc
}

/// Antisymmetry and grade additivity on pairs, Jacobi on triples and
/// invariance of the form on the finite part.
pub fn selftest_algebra(alg: &AffineAlgebra, w: SuiteWindows) -> AlgebraSuite {
    let rank = alg.rank();
    let mut failures = Vec::new();
    let pairs = alg.basis_window(-w.pairs, w.pairs);
    let mut antisymmetry = 0;
    let mut grading = 0;
    for (i, x) in pairs.iter().enumerate() {
        for y in &pairs[i..] {
            let xy = alg.bracket_basis(x, y);
            let yx = alg.bracket_basis(y, x);
            antisymmetry += 1;
            if !xy.add(&yx).is_zero() {
                failures.push(format!("antisymmetry fails for ({x}, {y})"));
            }
            if xy.is_zero() {
                continue;
            }
            grading += 1;
            let expected = &x.grade(rank) + &y.grade(rank);
            if xy.homogeneous_grade(rank) != Some(expected) {
                failures.push(format!("grading fails for ({x}, {y}): [x, y] = {xy}"));
            }
        }
    }

    let triples = alg.basis_window(-w.triples, w.triples);
    let els: Vec<LieElement> = triples.iter().map(|b| LieElement::basis(*b)).collect();
    let jacobi_fail: Vec<Vec<String>> = (0..els.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i + 1..els.len() {
                let xy = br(alg, &els[i], &els[j]);
                for k in j + 1..els.len() {
                    let total = br(alg, &xy, &els[k])
                        .add(&br(alg, &br(alg, &els[j], &els[k]), &els[i]))
                        .add(&br(alg, &br(alg, &els[k], &els[i]), &els[j]));
                    if !total.is_zero() {
                        out.push(format!("jacobi fails for ({}, {}, {})", triples[i], triples[j], triples[k]));
                    }
                }
            }
            out
        })
        .collect();
    let n = els.len();
    let jacobi = n * (n.saturating_sub(1)) * (n.saturating_sub(2)) / 6;
    failures.extend(jacobi_fail.into_iter().flatten());

    let fin: Vec<LieElement> = alg.finite_basis().into_iter().map(LieElement::basis).collect();
    let mut form_invariance = 0;
    for (a, x) in fin.iter().enumerate() {
        for (b, y) in fin.iter().enumerate() {
            for (c, z) in fin.iter().enumerate() {
                form_invariance += 1;
                if form(alg, &br(alg, x, y), z) != form(alg, x, &br(alg, y, z)) {
                    let fb = alg.finite_basis();
                    failures.push(format!("form invariance fails for ({}, {}, {})", fb[a], fb[b], fb[c]));
                }
            }
        }
    }
    AlgebraSuite { label: alg.root_system().label().into(), windows: w, antisymmetry, grading, jacobi, form_invariance, failures }
}

/// Runs the suite for each label, with `windows` or the rank default.
pub fn algebra_selftest(labels: &[String], windows: Option<SuiteWindows>) -> Result<CertificationReport> {
    let mut suites = Vec::new();
    for label in labels {
        let alg = AffineAlgebra::new(label)?;
        let w = windows.unwrap_or_else(|| SuiteWindows::for_rank(alg.rank()));
        suites.push(selftest_algebra(&alg, w));
    }
    let verdict = if suites.iter().all(AlgebraSuite::passed) { Verdict::Verified } else { Verdict::WitnessFound };
    Ok(CertificationReport::new("algebra_selftest", verdict, json!({ "suites": suites })))
}

/// `A2` with the coefficient of `e[a1+a2]` in `[e[a1], e[a2]]` doubled.
pub fn corrupted_fixture() -> AffineAlgebra {
    let alg = AffineAlgebra::new("A2").expect("A2");
    let rs = alg.root_system().clone();
    let idx = |s: &str| rs.root_index(&s.parse().expect("root")).expect("root index");
    let (a, b, k) = (idx("a1"), idx("a2"), idx("a1+a2"));
    let mut table = alg.table().clone();
    let c = table.bracket(a, b).iter().find(|t| t.0 == k).map(|t| t.1.clone()).expect("nonzero bracket");
    table.set_bracket_coefficient(a, b, k, c * Q::from_integer(2.into()));
    AffineAlgebra::with_table(rs, table).expect("same dimension")
}

/// Runs the suite on [`corrupted_fixture`]; a sound suite reports the
/// offending brackets.
pub fn fault_injection() -> CertificationReport {
    let suite = selftest_algebra(&corrupted_fixture(), SuiteWindows { pairs: 0, triples: 0 });
    let verdict = if suite.passed() { Verdict::Verified } else { Verdict::WitnessFound };
    let first: Vec<&String> = suite.failures.iter().take(5).collect();
    CertificationReport::new(
        "fault_injection",
        verdict,
        json!({"fixture": "A2 with 2x the e[a1+a2] coefficient of [e[a1], e[a2]]", "failures": suite.failures.len(), "first": first}),
    )
}
