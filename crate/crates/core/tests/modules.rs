use std::sync::Arc;

use affine_induced::modules::{build_inducing, induce, BasisVec, InducedModule, InducingModule, ModuleDescriptor, ModuleVector, VVec};
use affine_induced::parabolic::{parabolic_from_subset, LeviGen};
use affine_induced::pbw::{parse_monomial, Monomial};
use affine_induced::rational::q;
use affine_induced::{AffineAlgebra, LieBasisElement, LieElement, ParabolicSpec, Q};
use serde_json::json;

fn spec(label: &str, s: &[usize]) -> Arc<ParabolicSpec> {
    Arc::new(parabolic_from_subset(Arc::new(AffineAlgebra::new(label).unwrap()), s).unwrap())
}

fn module(spec: &Arc<ParabolicSpec>, desc: serde_json::Value) -> affine_induced::Result<InducingModule> {
    let d: ModuleDescriptor = serde_json::from_value(desc).unwrap();
    build_inducing(&d, spec)
}

fn basis(m: &InducingModule, s: &str) -> BasisVec {
    m.parse_basis(s).unwrap()
}

fn single(b: BasisVec, c: i64) -> VVec {
    let mut v = VVec::new();
    v.insert(b, q(c));
    v
}

fn g(spec: &ParabolicSpec, s: &str) -> LeviGen {
    spec.parse_levi_gen(s).unwrap()
}

#[test]
fn heisenberg_basis_starts_with_negative_monomials() {
    let sp = spec("A1", &[]);
    let m = module(&sp, json!({"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "1"})).unwrap();
    let b: Vec<String> = m.enumerate(2, 2).iter().map(|b| b.to_string()).collect();
    for s in ["1", "p1@-1", "p1@-1^2", "p1@-2"] {
        assert!(b.contains(&s.to_string()), "{s} missing from {b:?}");
    }
    // 1 + 2 + 3 multisets over two letters
    assert_eq!(b.len(), 6);
}

#[test]
fn heisenberg_action_examples() {
    let sp = spec("A1", &[]);
    let m = module(&sp, json!({"kind": "imaginary_whittaker", "eta": {"values": {"p1@2": "5"}, "default": "1"}, "a": "1"})).unwrap();
    // [h@2, h@-2] = 4c, so h@2 · (h@-2 v) = 4a v + η_2 (h@-2 v).
    let got = m.act(&g(&sp, "p1@2"), &basis(&m, "p1@-2")).unwrap();
    let mut expected = single(basis(&m, "1"), 4);
    expected.insert(basis(&m, "p1@-2"), q(5));
    assert_eq!(got, expected);
    assert_eq!(m.act(&g(&sp, "p1@3"), &basis(&m, "1")).unwrap(), single(basis(&m, "1"), 1));
    assert!(m.act(&g(&sp, "d"), &basis(&m, "1")).is_err());
}

#[test]
fn extended_whittaker_central_charge() {
    let sp = spec("A1", &[]);
    let m = module(&sp, json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "3/2"})).unwrap();
    for b in m.enumerate(2, 1) {
        let got = m.act(&LeviGen::Central, &b).unwrap();
        let mut e = VVec::new();
        e.insert(b.clone(), Q::new(3.into(), 2.into()));
        assert_eq!(got, e);
    }
    // d·p@-1 = p@-1 d - p@-1
    let got = m.act(&LeviGen::Derivation, &basis(&m, "p1@-1")).unwrap();
    assert_eq!(got.get(&basis(&m, "p1@-1")), Some(&q(-1)));
    assert_eq!(got.get(&basis(&m, "p1@-1 d")), Some(&q(1)));
}

#[test]
fn evaluation_formula_matches_direct_sum() {
    // Direct implementation of Σ_i a_i^n x^{(i)} on V(1) ⊗ V(2) at points 2, -1/3.
    let sp = spec("A1", &[0]);
    let m = module(&sp, json!({"kind": "evaluation", "mu": [[1], [2]], "points": ["2", "-1/3"]})).unwrap();
    let pts = [q(2), Q::new((-1).into(), 3.into())];
    let mus = [1i64, 2];
    let mat = |op: &str, m: i64, j: i64| -> Option<(i64, i64)> {
        match op {
            "h" => Some((j, m - 2 * j)),
            "e" if j > 0 => Some((j - 1, j * (m - j + 1))),
            "f" if j < m => Some((j + 1, 1)),
            _ => None,
        }
    };
    for (op, gen) in [("h", "h1@"), ("e", "e[a1]@"), ("f", "e[-a1]@")] {
        for n in -2..=3 {
            let x = g(&sp, &format!("{gen}{n}"));
            for b in m.enumerate(0, 0) {
                let BasisVec::Eval(idx) = &b else { panic!() };
                let mut expected = VVec::new();
                for i in 0..2 {
                    if let Some((t, c)) = mat(op, mus[i], idx[i] as i64) {
                        let mut next = idx.clone();
                        next[i] = t as u32;
                        let scale = affine_induced::rational::pow(&pts[i], n);
                        affine_induced::modules::vadd(&mut expected, BasisVec::Eval(next), q(c) * scale);
                    }
                }
                assert_eq!(m.act(&x, &b).unwrap(), expected, "{x} on {b}");
            }
        }
    }
}

#[test]
fn descriptor_errors() {
    let a2 = spec("A2", &[0]);
    let bad_charge = json!({"kind": "tensor", "lambda": ["0"], "a": "1",
        "left": {"kind": "verma", "highest_weight": ["0"], "a": "1"},
        "right": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "2"}});
    let e = module(&a2, bad_charge).err().unwrap().to_string();
    assert!(e.contains("charge"), "{e}");
    let a1 = spec("A1", &[0]);
    assert!(module(&a1, json!({"kind": "evaluation", "mu": [[1], [1]], "points": ["2", "2"]})).is_err());
    assert!(module(&a1, json!({"kind": "evaluation", "mu": [[1]], "points": ["0"]})).is_err());
    // η on an imaginary root vector or a non-simple root vector is rejected.
    let e = module(&a2, json!({"kind": "universal_whittaker_levi", "eta": {"values": {"h1@1": "1"}}, "a": "1"}));
    assert!(e.is_err());
    let e = module(&a2, json!({"kind": "universal_whittaker_levi", "eta": {"values": {"e[a1]@1": "1"}}, "a": "1"}));
    assert!(e.is_err());
    assert!(module(&a2, json!({"kind": "universal_whittaker_levi", "eta": {"values": {"e[a1]@0": "1", "e[-a1]@1": "2"}}, "a": "1"})).is_ok());
    // d-graded right factor needs the zero character.
    let e = module(&a2, json!({"kind": "tensor", "lambda": ["0"], "a": "1",
        "left": {"kind": "verma", "highest_weight": ["0"], "a": "1"},
        "right": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "1"}}));
    assert!(e.is_err());
}

fn a1_induced(a: &str) -> InducedModule {
    let sp = spec("A1", &[]);
    let m = module(&sp, json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": a, "lambda": ["0"]})).unwrap();
    induce(sp, m).unwrap()
}

fn mono(s: &str) -> Monomial<LieBasisElement> {
    parse_monomial(s, |t| t.parse()).unwrap()
}

#[test]
fn induced_act_example() {
    let m = a1_induced("1");
    let v = ModuleVector::basis(mono("e[-a1]@-1"), BasisVec::unit());
    let got = m.act(&LieElement::basis("e[a1]@0".parse().unwrap()), &v).unwrap();
    // [e, f⊗t⁻¹] = h⊗t⁻¹ and e kills 1 ⊗ v.
    let expected = ModuleVector::basis(Monomial::unit(), m.inducing().parse_basis("p1@-1").unwrap());
    assert_eq!(got, expected);
    let c = m.act(&LieElement::basis(LieBasisElement::Central), &v).unwrap();
    assert_eq!(c, v);
}

#[test]
fn induction_needs_the_whole_levi() {
    let sp = spec("A1", &[]);
    let m = module(&sp, json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1"})).unwrap();
    assert!(induce(sp.clone(), m).is_err());
    let m = module(&sp, json!({"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "1", "lambda": ["0"]})).unwrap();
    assert!(induce(sp, m).is_err());
}

#[test]
fn weight_components_split_and_shift() {
    let m = a1_induced("1");
    let u1 = ModuleVector::basis(mono("e[-a1]@-1"), BasisVec::unit());
    let u2 = ModuleVector::basis(mono("e[-a1]@-1 e[-a1]@0"), BasisVec::unit());
    assert_eq!(m.weight_components(&u1).len(), 1);
    let comps = m.weight_components(&u1.add(&u2));
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].vector.add(&comps[1].vector), u1.add(&u2));
    // h@0 eigenvalue = λ + wt(u)(h) = 0 - 2 for f.
    let c = comps.iter().find(|c| c.key == vec![-1]).unwrap();
    assert_eq!(c.perp, vec![q(-2)]);
    let shifted = m.act(&LieElement::basis("e[a1]@2".parse().unwrap()), &u2).unwrap();
    assert!(m.weight_components(&shifted).iter().all(|c| c.key == vec![-1]));
}

#[test]
fn text_roundtrip_induced_vectors() {
    let m = a1_induced("1");
    let v = ModuleVector::basis(mono("e[-a1]@-1^2"), m.inducing().parse_basis("p1@-1 d").unwrap()).scale(&q(-3));
    assert_eq!(m.parse_vector(&v.to_string()).unwrap(), v);
    assert!(m.parse_vector("1*[e[a1]@0|1]").is_err());
}
