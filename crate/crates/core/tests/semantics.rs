use std::collections::BTreeMap;

use modulo_core::kernel::{parse_proof_str, Q_PROOF_SRC};
use modulo_core::lang::{apply_subst, Expr, Prop, Substitution, Syntax, Var};
use modulo_core::model::{
    all_structures, check_model, check_soundness_sample, denote_prop, denote_term, Assignment, CheckLimits,
    FiniteStructure,
};
use modulo_core::rewriting::Budget;
use modulo_core::sample::{sample_proofs, seeded, SampleConfig, SyntaxGen};
use modulo_core::theories::{build_stt_model, builtin_by_name, stt_theory, SortDepthBound, TheoryBundle};
use modulo_core::tva::{bool2, heyting_to_tva, standard_family, validate_tva, FiniteHeyting};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn stt_models() -> Vec<(String, FiniteStructure)> {
    standard_family()
        .into_iter()
        .filter(|(_, h)| h.size() <= 4)
        .map(|(n, h)| (n, build_stt_model(&heyting_to_tva(&h).unwrap(), SortDepthBound::new(2).unwrap()).unwrap()))
        .collect()
}

fn random_assignment(s: &FiniteStructure, vars: &[Var], rng: &mut ChaCha8Rng) -> Assignment {
    vars.iter().map(|v| (v.clone(), s.domain(&v.sort).unwrap().choose(rng).unwrap().clone())).collect()
}

/// Substitution lemma on random triples; returns the number of triples tried.
fn substitution_lemma(t: &TheoryBundle, s: &FiniteStructure, seed: u64, n: usize) -> usize {
    let g = SyntaxGen::new(t.sig());
    let mut rng = seeded(seed);
    let mut tried = 0;
    for _ in 0..n {
        let a = g.prop(&mut rng, 4);
        let Some(x) = g.vars.choose(&mut rng).cloned() else { return 0 };
        let Some(term) = g.term(&mut rng, &x.sort, 3) else { continue };
        let phi = random_assignment(s, &g.vars, &mut rng);
        let mut sigma = Substitution::new();
        sigma.insert(x.clone(), term.clone()).unwrap();
        let lhs = denote_prop(s, &phi, &apply_subst(&sigma, &a)).unwrap();
        let mut phi2 = phi.clone();
        phi2.insert(x, denote_term(s, &phi, &term).unwrap());
        let rhs = denote_prop(s, &phi2, &a).unwrap();
        assert_eq!(lhs, rhs, "{a} [{term}]");
        tried += 1;
    }
    tried
}

#[test]
fn substitution_lemma_in_stt_models() {
    let t = stt_theory();
    for (name, s) in stt_models() {
        assert!(substitution_lemma(&t, &s, 17, 300) > 250, "{name}");
    }
}

#[test]
fn substitution_lemma_in_subset_structures() {
    let t = builtin_by_name("subset").unwrap();
    let all = all_structures(t.sig(), &bool2(), 2).unwrap();
    for (i, s) in all.iter().enumerate().step_by(17) {
        assert!(substitution_lemma(&t, s, i as u64, 100) > 0);
    }
}

#[test]
fn full_algebras_define_every_proposition() {
    let t = stt_theory();
    let g = SyntaxGen::new(t.sig());
    let mut rng = seeded(5);
    for (name, s) in stt_models() {
        for _ in 0..200 {
            let p = g.prop(&mut rng, 5);
            let phi = random_assignment(&s, &g.vars, &mut rng);
            assert!(denote_prop(&s, &phi, &p).unwrap().is_some(), "{name}: {p}");
        }
    }
}

#[test]
fn congruent_propositions_denote_alike() {
    let t = stt_theory();
    let g = SyntaxGen::new(t.sig());
    let mut rng = seeded(9);
    let models = stt_models();
    let mut compared = 0;
    for _ in 0..300 {
        let p = match rng.gen_bool(0.5) {
            true => g.prop(&mut rng, 3),
            false => {
                let sort = modulo_core::lang::Sort::base("o");
                match g.term(&mut rng, &sort, 6) {
                    Some(x) => t.sig().mk_atom("eps", vec![], vec![x]).unwrap(),
                    None => continue,
                }
            }
        };
        let Ok(nf) = t.system.normal_form(&Expr::Prop(p.clone()), Budget::default()) else { continue };
        let Expr::Prop(q) = nf.result else { unreachable!() };
        let (name, s) = models.choose(&mut rng).unwrap();
        let phi = random_assignment(s, &g.vars, &mut rng);
        assert_eq!(denote_prop(s, &phi, &p).unwrap(), denote_prop(s, &phi, &q).unwrap(), "{name}: {p} vs {q}");
        compared += 1;
    }
    assert!(compared > 200);
}

#[test]
fn propositional_soundness_over_all_models() {
    for name in ["pimpq", "qimpp"] {
        let t = builtin_by_name(name).unwrap();
        let mut proofs = sample_proofs(&t, 31, 200, SampleConfig::default());
        if name == "pimpq" {
            proofs.push(parse_proof_str(t.sig(), Q_PROOF_SRC).unwrap());
        }
        let models: Vec<_> = all_structures(t.sig(), &bool2(), 1)
            .unwrap()
            .into_iter()
            .filter(|s| check_model(s, &t, CheckLimits::default()).holds)
            .collect();
        assert!(!models.is_empty());
        for s in &models {
            let r = check_soundness_sample(s, &proofs, CheckLimits::default());
            assert!(r.violations.is_empty(), "{name}: {:?}", r.violations);
        }
    }
}

/// Down-sets of a poset on `n` points, ordered by inclusion.
fn downset_lattice(n: usize, rel: &[(usize, usize)]) -> FiniteHeyting {
    let below = |a: usize, b: usize| a == b || rel.contains(&(a, b));
    let sets: Vec<u32> = (0u32..1 << n)
        .filter(|&m| (0..n).all(|b| m >> b & 1 == 0 || (0..n).all(|a| !below(a, b) || m >> a & 1 == 1)))
        .collect();
    let names = sets.iter().map(|m| format!("{m:0n$b}")).collect();
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if a & !b == 0 {
                pairs.push((i, j));
            }
        }
    }
    FiniteHeyting::from_order(names, &pairs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distributive_lattices_are_truth_values_algebras(n in 1usize..=3, edges in proptest::collection::vec((0usize..3, 0usize..3), 0..3)) {
        // Keep a < b only, so the relation stays acyclic.
        let rel: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < b && b < n).collect();
        let mut closed = rel.clone();
        for _ in 0..n {
            for &(a, b) in &closed.clone() {
                for &(c, d) in &closed.clone() {
                    if b == c && !closed.contains(&(a, d)) {
                        closed.push((a, d));
                    }
                }
            }
        }
        let h = downset_lattice(n, &closed);
        prop_assert!(h.check_laws().is_ok());
        let t = heyting_to_tva(&h).unwrap();
        let r = validate_tva(&t);
        prop_assert!(r.all_hold(), "{:?}", r.failing());
    }

    #[test]
    fn chain_products_are_truth_values_algebras(a in 1usize..=3, b in 1usize..=3) {
        let h = FiniteHeyting::chain(a).product(&FiniteHeyting::chain(b));
        let r = validate_tva(&heyting_to_tva(&h).unwrap());
        prop_assert!(r.all_hold(), "{:?}", r.failing());
    }
}

#[test]
fn assignments_only_touch_declared_variables() {
    let t = stt_theory();
    let g = SyntaxGen::new(t.sig());
    let mut rng = seeded(3);
    for _ in 0..100 {
        let p: Prop = g.prop(&mut rng, 5);
        let allowed: BTreeMap<_, _> = g.vars.iter().map(|v| (v.clone(), ())).collect();
        assert!(p.free_vars().iter().all(|v| allowed.contains_key(v)));
    }
}
