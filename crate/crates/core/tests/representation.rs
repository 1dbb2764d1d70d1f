use std::sync::Arc;

use affine_induced::modules::{build_inducing, induce, InducedModule, ModuleDescriptor, ModuleVector};
use affine_induced::parabolic::parabolic_from_subset;
use affine_induced::rational::Q;
use affine_induced::{AffineAlgebra, LieBasisElement};
use proptest::prelude::*;
use rayon::prelude::*;
use serde_json::{json, Value};

fn induced(label: &str, s: &[usize], desc: Value) -> InducedModule {
    let sp = Arc::new(parabolic_from_subset(Arc::new(AffineAlgebra::new(label).unwrap()), s).unwrap());
    let d: ModuleDescriptor = serde_json::from_value(desc).unwrap();
    induce(sp.clone(), build_inducing(&d, &sp).unwrap()).unwrap()
}

/// Counts (x, y, v) with a nonzero defect.
fn defects(m: &InducedModule, xs: &[LieBasisElement], degree: u32, window: i64) -> usize {
    m.basis(degree, window)
        .par_iter()
        .map(|(u, b)| {
            let v = ModuleVector::basis(u.clone(), b.clone());
            let mut bad = 0;
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    if !m.representation_defect(&xs[i], &xs[j], &v).unwrap().is_zero() {
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum()
}

fn thm33() -> InducedModule {
    induced("A1", &[], json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1", "lambda": ["0"]}))
}

fn thm44() -> InducedModule {
    induced(
        "A2",
        &[0],
        json!({"kind": "tensor", "lambda": ["0"], "a": "1",
            "left": {"kind": "whittaker_evaluation",
                "whittaker": {"kind": "universal_whittaker_levi", "without_d": true,
                    "eta": {"values": {"e[a1]@0": "1", "e[-a1]@1": "1"}}, "a": "1"},
                "evaluation": {"kind": "evaluation", "mu": [[1]], "points": ["2"]}},
            "right": {"kind": "imaginary_whittaker", "eta": {}, "a": "1"}}),
    )
}

#[test]
fn thm33_module_is_a_representation() {
    let m = thm33();
    let xs = m.spec().algebra().basis_window(-2, 2);
    assert_eq!(defects(&m, &xs, 2, 2), 0);
}

#[test]
fn whittaker_evaluation_tensor_is_a_representation() {
    let m = thm44();
    let xs = m.spec().algebra().basis_window(-1, 1);
    assert_eq!(defects(&m, &xs, 1, 1), 0);
}

#[test]
fn verma_tensor_is_a_representation() {
    let m = induced(
        "A2",
        &[0],
        json!({"kind": "tensor", "lambda": ["1"], "a": "1",
            "left": {"kind": "verma", "highest_weight": ["1"], "a": "1"},
            "right": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1"}}),
    );
    let xs = m.spec().algebra().basis_window(-1, 1);
    assert_eq!(defects(&m, &xs, 1, 1), 0);
}

#[test]
fn perp_weight_shifts_by_lambda() {
    let m = thm33();
    let v = m.parse_vector("1*[e[-a1]@-1|1]").unwrap();
    let comps = m.weight_components(&v);
    assert_eq!(comps.len(), 1);
    // the whole Cartan is perpendicular when S is empty: λ + (−α₁ | ·)
    assert_eq!(comps[0].perp.len(), 1);
    assert_ne!(comps[0].perp[0], Q::from_integer(0.into()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_combinations_a3(
        coeffs in prop::collection::vec(-3i64..=3, 4),
        pick in prop::collection::vec(any::<prop::sample::Index>(), 6),
    ) {
        let m = induced("A3", &[1], json!({"kind": "universal_whittaker_levi",
            "eta": {"values": {"e[a2]@0": "1", "e[-a2]@1": "2"}}, "a": "1", "lambda": ["1", "-1"]}));
        let basis = m.basis(1, 1);
        let xs = m.spec().algebra().basis_window(-1, 1);
        let mut v = ModuleVector::zero();
        for (c, i) in coeffs.iter().zip(&pick) {
            let (u, b) = &basis[i.index(basis.len())];
            v = v.add(&ModuleVector::basis(u.clone(), b.clone()).scale(&Q::from_integer((*c).into())));
        }
        let x = xs[pick[4].index(xs.len())];
        let y = xs[pick[5].index(xs.len())];
        prop_assert!(m.representation_defect(&x, &y, &v).unwrap().is_zero());
    }
}
