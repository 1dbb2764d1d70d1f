use std::sync::Arc;

use affine_induced::certify::{
    algebra_selftest, check_torsion_free, check_whittaker, descend, extraction_identities, fault_injection,
    irreducibility_probe, recheck_descent, recheck_report, reducibility_witness_charge_zero, span_escape, Budgets,
    PivotStrategy, Verdict,
};
use affine_induced::modules::{build_inducing, induce, InducedModule, InducingModule, ModuleDescriptor, ModuleVector};
use affine_induced::parabolic::parabolic_from_subset;
use affine_induced::rational::q;
use affine_induced::{AffineAlgebra, LieBasisElement, LieElement, ParabolicSpec};
use serde_json::{json, Value};

fn spec(label: &str, s: &[usize]) -> Arc<ParabolicSpec> {
    Arc::new(parabolic_from_subset(Arc::new(AffineAlgebra::new(label).unwrap()), s).unwrap())
}

fn inducing(sp: &Arc<ParabolicSpec>, desc: Value) -> InducingModule {
    let d: ModuleDescriptor = serde_json::from_value(desc).unwrap();
    build_inducing(&d, sp).unwrap()
}

fn induced(sp: &Arc<ParabolicSpec>, desc: Value) -> InducedModule {
    induce(sp.clone(), inducing(sp, desc)).unwrap()
}

fn heisenberg_a1(a: &str) -> InducingModule {
    inducing(&spec("A1", &[]), json!({"kind": "imaginary_whittaker", "eta": {"values": {"p1@2": "3"}, "default": "1"}, "a": a}))
}

fn thm33() -> InducedModule {
    induced(&spec("A1", &[]), json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1", "lambda": ["0"]}))
}

fn thm42() -> InducedModule {
    induced(
        &spec("A2", &[0]),
        json!({"kind": "universal_whittaker_levi", "eta": {"values": {"e[a1]@0": "1", "e[-a1]@1": "1"}}, "a": "1", "lambda": ["1"]}),
    )
}

fn thm46() -> InducedModule {
    induced(
        &spec("A2", &[0]),
        json!({"kind": "tensor", "lambda": ["1"], "a": "1",
            "left": {"kind": "verma", "highest_weight": ["1"], "a": "1"},
            "right": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1"}}),
    )
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn whittaker_relations_and_products() {
    let m = heisenberg_a1("1");
    let r = check_whittaker(&m, 6).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    let rel = strs(&r.witness["relations"]);
    assert_eq!(rel.len(), 6);
    assert!(rel.contains(&"p1@2 -> 3".to_string()));
    assert!(rel.contains(&"p1@5 -> 1".to_string()));
    assert_eq!(r.witness["products"], 36);
    assert!(recheck_report(Some(&m), None, &r).unwrap());
    // x y v = η(x) η(y) v computed directly
    let sp = m.spec().clone();
    let x = sp.parse_levi_gen("p1@2").unwrap();
    let yv = m.act(&sp.parse_levi_gen("p1@3").unwrap(), &m.cyclic()).unwrap();
    let got = m.act_vec(&x, &yv).unwrap();
    assert_eq!(got.get(&m.cyclic()), Some(&q(3)));
    assert_eq!(got.len(), 1);
}

#[test]
fn tampered_whittaker_report_fails_recheck() {
    let m = heisenberg_a1("1");
    let mut r = check_whittaker(&m, 3).unwrap();
    r.witness["relations"][0] = json!("p1@1 -> 7");
    assert!(!recheck_report(Some(&m), None, &r).unwrap());
}

#[test]
fn torsion_free_at_nonzero_charge() {
    let m = heisenberg_a1("1");
    let r = check_torsion_free(&m, 60, 2, 2, 5).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(r.witness["pairs"].as_array().unwrap().len() >= 50);
    assert!(recheck_report(Some(&m), None, &r).unwrap());
    assert!(check_torsion_free(&heisenberg_a1("0"), 10, 2, 2, 5).is_err());
}

#[test]
fn extraction_reproduces_charge() {
    let sp = spec("A2", &[0]);
    for a in ["1", "2", "-1/3"] {
        let m = inducing(&sp, json!({"kind": "universal_whittaker_levi", "eta": {"values": {"e[a1]@0": "1"}}, "a": a}));
        let ex = extraction_identities(&m, 4).unwrap();
        assert_eq!(ex.len(), 4);
        for e in &ex {
            assert!(e.holds, "{}", e.x);
            assert_eq!(e.result.get(&m.cyclic()), Some(&affine_induced::rational::parse_q(a).unwrap()));
        }
    }
}

#[test]
fn charge_zero_positive_span_is_invariant() {
    let m0 = heisenberg_a1("0");
    let r = reducibility_witness_charge_zero(&m0, 2, 3).unwrap();
    assert_eq!(r.verdict, Verdict::WitnessFound);
    assert!(recheck_report(Some(&m0), None, &r).unwrap());
    assert!(span_escape(m0.as_character().unwrap(), 2, 3).unwrap().is_none());

    // At a = 1 the same span is not invariant: p@1 · p@-1 has a constant term.
    let m1 = heisenberg_a1("1");
    let esc = span_escape(m1.as_character().unwrap(), 2, 3).unwrap().expect("escape at a = 1");
    assert!(esc.image.contains_key(&m1.cyclic()));
    assert!(reducibility_witness_charge_zero(&m1, 2, 3).is_err());
}

#[test]
fn descent_from_inducing_vector_is_identity() {
    let m = thm33();
    let v = m.parse_vector("1*[1|p1@-1] + 2*[1|1]").unwrap();
    let out = descend(&m, &v, &Budgets::default()).unwrap();
    assert_eq!(out.verdict, Verdict::Verified);
    let w = out.witness.unwrap();
    assert!(w.steps.is_empty());
    assert_eq!(w.tau, vec![0]);
    assert_eq!(out.attempts, 0);
}

#[test]
fn single_bracket_oracle_a1() {
    let m = thm33();
    let alg = m.spec().algebra().clone();
    let f = "e[-a1]@-1".parse::<LieBasisElement>().unwrap();
    let v = m.parse_vector("1*[e[-a1]@-1|1]").unwrap();
    // e⊗t^{-j}: [e@-j, f@-1] = h@-(j+1) with no central term, and h@-(j+1)
    // lies in the Heisenberg Levi, so the image is 1 ⊗ h@-(j+1) v.
    for j in 0..3i64 {
        let e = LieBasisElement::root("a1".parse().unwrap(), -j);
        let br = alg.bracket_basis(&e, &f);
        assert_eq!(br, LieElement::basis(LieBasisElement::cartan(0, -1 - j)));
        let got = m.act_basis(&e, &v).unwrap();
        assert!(got.in_inducing());
        assert_eq!(got, m.parse_vector(&format!("1*[1|p1@{}]", -1 - j)).unwrap());
    }
    // The descent scan starts above every |k_i|, so it picks e@-1.
    let out = descend(&m, &v, &Budgets::default()).unwrap();
    let w = out.witness.unwrap();
    assert_eq!(w.steps, vec!["e[a1]@-1"]);
    assert_eq!(w.result, "1*[1|p1@-2]");
    assert_eq!(w.tau, vec![1, 0]);
    assert!(recheck_descent(&m, &w).unwrap());
}

#[test]
fn descent_golden_a2_tau_two() {
    let m = thm42();
    let v = m.parse_vector("1*[e[-a1-a2]@-1 e[-a2]@0|1]").unwrap();
    let out = descend(&m, &v, &Budgets::default()).unwrap();
    assert_eq!(out.verdict, Verdict::Verified);
    let w = out.witness.unwrap();
    assert_eq!(w.tau, vec![2, 1, 0]);
    assert_eq!(w.steps, vec!["e[a2]@0", "e[a2]@-2"]);
    assert_eq!(
        w.result,
        "1/2*[1|e[-a1]@-3] + -1/2*[1|e[-a1]@-3 h1@0] + -1/2*[1|e[-a1]@-1 h1@-2] + 1/2*[1|e[-a1]@-1 p1@-2]"
    );
    assert!(recheck_descent(&m, &w).unwrap());
    let mut bad = w.clone();
    bad.result = "1*[1|e[-a1]@-3]".into();
    assert!(!recheck_descent(&m, &bad).unwrap());
}

#[test]
fn descent_budget_exhaustion_is_inconclusive() {
    let m = thm42();
    let v = m.parse_vector("1*[e[-a1-a2]@-1 e[-a2]@0|1]").unwrap();
    let tight = Budgets { b: 1, ..Budgets::default() };
    let out = descend(&m, &v, &tight).unwrap();
    assert_eq!(out.verdict, Verdict::Inconclusive);
    assert_eq!(out.exhausted.as_deref(), Some("B"));
    assert!(out.witness.is_none());
    assert!(descend(&m, &ModuleVector::zero(), &Budgets::default()).is_err());
}

#[test]
fn both_pivots_verify_golden_scenarios() {
    for (m, d) in [(thm33(), 2), (thm42(), 2), (thm46(), 1)] {
        for pivot in [PivotStrategy::LargestK, PivotStrategy::LeastTauThenK] {
            let b = Budgets { d, r: 3, pivot, ..Budgets::default() };
            let r = irreducibility_probe(&m, &b).unwrap();
            assert_eq!(r.verdict, Verdict::Verified, "{pivot:?}");
            assert_eq!(r.witness["inconclusive"], 0);
            assert!(recheck_report(Some(m.inducing()), Some(&m), &r).unwrap());
        }
    }
}

#[test]
fn charge_zero_induced_module_rejects_descent() {
    let m = induced(&spec("A1", &[]), json!({"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "0", "lambda": ["0"]}));
    assert!(irreducibility_probe(&m, &Budgets::default()).is_err());
    let v = m.parse_vector("1*[e[-a1]@-1|1]").unwrap();
    assert!(descend(&m, &v, &Budgets::default()).is_err());
}

#[test]
fn selftest_and_fault_injection() {
    let r = algebra_selftest(&["A1".into(), "A2".into()], None).unwrap();
    assert_eq!(r.verdict, Verdict::Verified);
    assert!(recheck_report(None, None, &r).unwrap());
    let f = fault_injection();
    assert_eq!(f.verdict, Verdict::WitnessFound);
    let first = strs(&f.witness["first"]);
    assert!(first.iter().any(|s| s.contains("(e[a1]@0, e[a2]@0")), "{first:?}");
    assert!(recheck_report(None, None, &f).unwrap());
}
