use std::path::Path;

use super::*;
use crate::kernel::{parse_proof_str, Q_PROOF_SRC, PROOF_REFL_SRC};
use crate::lang::{parse_prop_str, parse_term_str, Prop, Scope, Sequent, Sort, Var};
use crate::theories::{build_stt_model, example_theories, stt_theory, subset_theory, SortDepthBound, SttModelError, TheoryBundle};
use crate::tva::{bool2, heyting_to_tva, FiniteHeyting};

fn prop(t: &TheoryBundle, vars: &[Var], src: &str) -> Prop {
    parse_prop_str(t.sig(), &Scope::from_vars(vars), src).unwrap()
}

/// A structure for a theory over nullary predicates `P`, `Q`.
fn pq(theory: &TheoryBundle, p: &str, q: &str) -> FiniteStructure {
    let src = format!(r#"{{"theory": "{}", "algebra": "bool2", "predicates": {{"P": [["{p}"]], "Q": [["{q}"]]}}}}"#, theory.name);
    load_structure(&src, Path::new(".")).unwrap().1
}

fn stt2() -> FiniteStructure {
    build_stt_model(&bool2(), SortDepthBound::new(2).unwrap()).unwrap()
}

fn subset_structure() -> (TheoryBundle, FiniteStructure) {
    // mem as the identity relation on {a, b}; subset as inclusion of singletons.
    let src = r#"{
        "theory": "subset", "algebra": "bool2",
        "domains": {"i": ["a", "b"]},
        "predicates": {
            "mem": [["a", "a", "1"], ["a", "b", "0"], ["b", "a", "0"], ["b", "b", "1"]],
            "subset": [["a", "a", "1"], ["a", "b", "0"], ["b", "a", "0"], ["b", "b", "1"]]
        }
    }"#;
    load_structure(src, Path::new(".")).unwrap()
}

#[test]
fn variables_and_constants() {
    let (t, s) = subset_structure();
    let x = Var::new("x", Sort::base("i"));
    let mut phi = Assignment::new();
    phi.insert(x.clone(), Value::Elem(1));
    assert_eq!(denote_term(&s, &phi, &crate::lang::Term::Var(x.clone())).unwrap(), Value::Elem(1));
    assert_eq!(denote_prop(&s, &phi, &prop(&t, std::slice::from_ref(&x), "(mem x x)")).unwrap(), Some(1));
    let y = Var::new("y", Sort::base("i"));
    let err = denote_prop(&s, &phi, &prop(&t, &[y], "(mem y y)")).unwrap_err();
    assert_eq!(err, ModelError::UnboundVariable("y".into()));
    let stt = stt_theory();
    let s = stt2();
    let c = parse_term_str(stt.sig(), &Scope::new(), "dtop").unwrap();
    assert_eq!(denote_term(&s, &Assignment::new(), &c).unwrap(), Value::Elem(s.tva.top));
}

#[test]
fn k_returns_its_first_argument() {
    let stt = stt_theory();
    let s = stt2();
    let (a, b) = (Var::new("a", Sort::base("o")), Var::new("b", Sort::arrow(Sort::base("i"), Sort::base("o"))));
    let t = parse_term_str(stt.sig(), &Scope::from_vars(&[a.clone(), b.clone()]), "(app (app (_ K o (-> i o)) a) b)").unwrap();
    for x in 0..2 {
        for f in s.domain(&b.sort).unwrap().iter() {
            let phi = Assignment::from([(a.clone(), Value::Elem(x)), (b.clone(), f.clone())]);
            assert_eq!(denote_term(&s, &phi, &t).unwrap(), Value::Elem(x));
        }
    }
}

#[test]
fn eps_is_the_identity_and_connectives_follow_the_algebra() {
    let stt = stt_theory();
    let s = stt2();
    let a = Var::new("a", Sort::base("o"));
    let eps = prop(&stt, std::slice::from_ref(&a), "(eps a)");
    for x in 0..2 {
        assert_eq!(denote_prop(&s, &Assignment::from([(a.clone(), Value::Elem(x))]), &eps).unwrap(), Some(x));
    }
    let p = prop(&stt, &[], "(eps (app (app dand dtop) dtop))");
    let top = s.tva.top;
    assert_eq!(denote_prop(&s, &Assignment::new(), &p).unwrap(), Some(s.tva.and[top][top]));
    let p = prop(&stt, &[], "(eps (app (_ dall o) (app dimp dbot)))");
    // forall x. bot => x is top.
    assert_eq!(denote_prop(&s, &Assignment::new(), &p).unwrap(), Some(top));
}

#[test]
fn truth_values_of_simple_propositions() {
    let [pimpq, _] = <[TheoryBundle; 2]>::try_from(example_theories()).unwrap();
    let h = heyting_to_tva(&FiniteHeyting::chain(3)).unwrap();
    for p in ["0", "1"] {
        let mut s = pq(&pimpq, p, "0");
        assert_eq!(denote_prop(&s, &Assignment::new(), &Prop::Top).unwrap(), Some(1));
        // The same tables over the three-element chain.
        s.tva = h.clone();
        let v = denote_prop(&s, &Assignment::new(), &prop(&pimpq, &[], "(=> P P)")).unwrap();
        assert_eq!(v, Some(h.top));
    }
}

#[test]
fn quantifiers_outside_the_domain_are_undefined() {
    let (t, mut s) = subset_structure();
    s.tva.forall = [(crate::tva::singleton(1), 1)].into_iter().collect();
    let x = Var::new("x", Sort::base("i"));
    // mem x a takes both values as x ranges over {a, b}.
    let p = prop(&t, &[], "(forall (x i) (mem x x))");
    assert_eq!(denote_prop(&s, &Assignment::new(), &p).unwrap(), Some(1));
    let q = parse_prop_str(t.sig(), &Scope::from_vars(&[x]), "(forall (y i) (mem y x))").unwrap();
    let phi = Assignment::from([(Var::new("x", Sort::base("i")), Value::Elem(0))]);
    assert_eq!(denote_prop(&s, &phi, &q).unwrap(), None);
}

#[test]
fn sequent_denotations() {
    let [pimpq, _] = <[TheoryBundle; 2]>::try_from(example_theories()).unwrap();
    let s = pq(&pimpq, "1", "0");
    let (p, q) = (prop(&pimpq, &[], "P"), prop(&pimpq, &[], "Q"));
    let e = Assignment::new();
    assert_eq!(denote_sequent(&s, &e, &Sequent::new(vec![q.clone()], q.clone())).unwrap(), Some(1));
    assert_eq!(denote_sequent(&s, &e, &Sequent::new(vec![], q.clone())).unwrap(), Some(0));
    assert_eq!(denote_sequent(&s, &e, &Sequent::new(vec![p.clone(), q.clone()], p)).unwrap(), Some(1));
}

#[test]
fn example_theory_models_by_enumeration() {
    let [pimpq, qimpp] = <[TheoryBundle; 2]>::try_from(example_theories()).unwrap();
    let imp = |a: usize, b: usize| if a == 1 && b == 0 { 0 } else { 1 };
    for p in 0..2 {
        for q in 0..2 {
            // P --> P => Q needs p = (p => q); P --> Q => P needs p = (q => p).
            let s = pq(&pimpq, &p.to_string(), &q.to_string());
            let r = check_model(&s, &pimpq, CheckLimits::default());
            assert_eq!(r.holds, p == imp(p, q), "pimpq {p} {q}");
            let s = pq(&qimpp, &p.to_string(), &q.to_string());
            let r = check_model(&s, &qimpp, CheckLimits::default());
            assert_eq!(r.holds, p == imp(q, p), "qimpp {p} {q}");
            if !r.holds {
                assert_eq!(r.failures[0].kind, ModelFailureKind::Mismatch);
                assert_eq!(r.failures[0].detail, "0 vs 1");
            }
        }
    }
}

#[test]
fn stt_model_satisfies_every_rule() {
    let s = stt2();
    let r = check_model(&s, &stt_theory(), CheckLimits::default());
    assert!(r.holds, "{:?}", r.failures);
    assert_eq!(r.rules.len(), 9);
    assert!(r.rules.iter().all(|x| x.instances > 0 && x.assignments > 0), "{:?}", r.rules);
}

#[test]
fn wrong_builtins_are_caught() {
    let mut s = stt2();
    s.funs.insert("dand".into(), Interp::Builtin(Builtin::Conn(Conn::Or)));
    let r = check_model(&s, &stt_theory(), CheckLimits::default());
    assert!(!r.holds);
    assert!(r.failures.iter().all(|f| f.item == "eps-and"));
    let mut s = stt2();
    s.funs.insert("K".into(), Interp::Builtin(Builtin::S));
    let r = check_model(&s, &stt_theory(), CheckLimits::default());
    assert!(r.failures.iter().any(|f| f.item == "K"));
}

#[test]
fn stt_model_needs_a_full_algebra() {
    let mut t = bool2();
    t.exists.remove(&0);
    assert_eq!(build_stt_model(&t, SortDepthBound::new(2).unwrap()).unwrap_err(), SttModelError::NotFull);
    assert_eq!(SortDepthBound::new(0), Err(SttModelError::ZeroDepth));
    // Depth 4 needs the domain of (o -> o) -> o -> o as an argument sort.
    let big = heyting_to_tva(&FiniteHeyting::chain(6)).unwrap();
    assert!(matches!(build_stt_model(&big, SortDepthBound::new(4).unwrap()), Err(SttModelError::DomainTooLarge { .. })));
}

#[test]
fn function_domains_are_enumerated_consistently() {
    let s = stt2();
    let oo = Sort::arrow(Sort::base("o"), Sort::base("o"));
    let d = s.domain(&oo).unwrap();
    assert_eq!(d.len(), 4);
    for (k, f) in d.iter().enumerate() {
        assert_eq!(s.index_of(f, &oo).unwrap(), k);
    }
    // The reified negation-like function `dimp x dbot`, as a closure, has the same index as its table.
    let neg = s.apply(&connective(Conn::Imp), &Value::Elem(0)).unwrap();
    let k = s.index_of(&neg, &oo).unwrap();
    assert!(s.value_eq(&neg, &d[k], &oo).unwrap());
}

#[test]
fn q_proof_is_sound_in_every_model() {
    let [pimpq, _] = <[TheoryBundle; 2]>::try_from(example_theories()).unwrap();
    let proof = parse_proof_str(pimpq.sig(), Q_PROOF_SRC).unwrap();
    let mut models = 0;
    for p in ["0", "1"] {
        for q in ["0", "1"] {
            let s = pq(&pimpq, p, q);
            if check_model(&s, &pimpq, CheckLimits::default()).holds {
                models += 1;
                let r = check_soundness_sample(&s, std::slice::from_ref(&proof), CheckLimits::default());
                assert!(r.violations.is_empty());
                assert_eq!(q, "1");
            }
        }
    }
    assert_eq!(models, 1);
    let stt = stt_theory();
    let refl = parse_proof_str(stt.sig(), PROOF_REFL_SRC).unwrap();
    let r = check_soundness_sample(&stt2(), &[refl], CheckLimits::default());
    assert_eq!((r.assignments, r.violations.len()), (2, 0));
}

#[test]
fn subset_structure_checks() {
    let (t, s) = subset_structure();
    let r = check_model(&s, &t, CheckLimits::default());
    // subset x y is forall z. mem z x => mem z y; with mem the identity this is x = y.
    assert!(r.holds, "{:?}", r.failures);
    assert_eq!(r.rules[0].assignments, 4);
    assert_eq!(subset_theory().system.rules.len(), 1);
}

#[test]
fn structure_files_are_validated() {
    let bad = r#"{"theory": "pimpq", "algebra": "bool2", "predicates": {"P": [["1"]]}}"#;
    assert_eq!(load_structure(bad, Path::new(".")).unwrap_err(), ModelError::UnknownSymbol("Q".into()));
    let bad = r#"{"theory": "pimpq", "algebra": "bool2", "predicates": {"P": [["1"]], "Q": [["2"]]}}"#;
    assert!(matches!(load_structure(bad, Path::new(".")).unwrap_err(), ModelError::UnknownElement { .. }));
    let bad = r#"{"theory": "subset", "algebra": "bool2", "domains": {"i": ["a"]}, "predicates": {"mem": [], "subset": []}}"#;
    assert!(matches!(load_structure(bad, Path::new(".")).unwrap_err(), ModelError::Invalid(_)));
    let stt = r#"{"theory": "stt", "algebra": "chain3", "stt_model": {"depth": 2}}"#;
    let (_, s) = load_structure(stt, Path::new(".")).unwrap();
    assert_eq!(s.tva.size(), 3);
    assert_eq!(parse_value(&s, &Sort::base("o"), "m").unwrap(), Value::Elem(1));
}

#[test]
fn enumerated_propositional_models() {
    use crate::theories::builtin_by_name;
    let oracle = |name: &str, p: usize, q: usize| match name {
        "pimpq" => p == bool2().imp[p][q],
        _ => p == bool2().imp[q][p],
    };
    for name in ["pimpq", "qimpp"] {
        let t = builtin_by_name(name).unwrap();
        let all = all_structures(t.sig(), &bool2(), 1).unwrap();
        assert_eq!(all.len(), 4);
        for s in &all {
            let p = match &s.preds["P"] {
                Interp::Table(m) => m[&vec![]],
                _ => unreachable!(),
            };
            let q = match &s.preds["Q"] {
                Interp::Table(m) => m[&vec![]],
                _ => unreachable!(),
            };
            assert_eq!(check_model(s, &t, CheckLimits::default()).holds, oracle(name, p, q), "{name} P={p} Q={q}");
        }
    }
    let subset = builtin_by_name("subset").unwrap();
    assert_eq!(all_structures(subset.sig(), &bool2(), 2).unwrap().len(), 256);
    assert!(all_structures(builtin_by_name("stt").unwrap().sig(), &bool2(), 1).is_err());
}
