//! Property checks over sampled proofs and random syntax, reporting
//! counterexamples instead of panicking.

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::kernel::{check, find_redexes, is_cut_free, normalize, print_proof, ProofTree, RedexKind, TraceStatus};
use crate::lang::{apply_subst, Substitution};
use crate::model::{check_soundness_sample, denote_prop, denote_term, Assignment, CheckLimits, FiniteStructure};
use crate::rewriting::Budget;
use crate::sample::{seeded, SyntaxGen};
use crate::theories::TheoryBundle;

/// Counterexamples kept per property.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

impl PropertyOutcome {
    fn new(property: impl Into<String>) -> Self {
        PropertyOutcome { property: property.into(), cases: 0, failures: 0, counterexamples: Vec::new() }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(detail());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

fn show(theory: &TheoryBundle, p: &ProofTree) -> String {
    print_proof(theory.sig(), p).to_compact()
}

/// Every proof along each reduction trace is accepted and keeps the conclusion.
pub fn subject_reduction(theory: &TheoryBundle, proofs: &[ProofTree], fuel: usize, budget: Budget) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(format!("subject reduction in {}", theory.name));
    for p in proofs {
        let tr = normalize(theory, p, fuel, budget);
        let bad = tr.proofs.iter().position(|q| !check(theory, q, budget).accepted() || q.conclusion != p.conclusion);
        out.record(bad.is_none(), || format!("step {} of {}", bad.unwrap_or(0), show(theory, p)));
    }
    out
}

/// Cut-free proofs have no detour redex, and normal forms reached by
/// `normalize` are cut-free.
pub fn cut_free_alignment(theory: &TheoryBundle, proofs: &[ProofTree], fuel: usize, budget: Budget) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(format!("cut-free alignment in {}", theory.name));
    for p in proofs {
        let detour = find_redexes(theory, p, budget).iter().any(|(_, k)| *k == RedexKind::Detour);
        out.record(!(is_cut_free(p) && detour), || format!("cut-free with a detour: {}", show(theory, p)));
        let tr = normalize(theory, p, fuel, budget);
        if tr.status == TraceStatus::NormalForm {
            out.record(is_cut_free(tr.last()), || format!("normal but not cut-free: {}", show(theory, tr.last())));
        }
    }
    out
}

/// Every proof normalizes within `fuel`, and closed normal proofs end with
/// an introduction rule.
pub fn normalization(theory: &TheoryBundle, proofs: &[ProofTree], fuel: usize, budget: Budget) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(format!("normalization in {}", theory.name));
    for p in proofs {
        let tr = normalize(theory, p, fuel, budget);
        out.record(tr.status == TraceStatus::NormalForm, || format!("{:?}: {}", tr.status, show(theory, p)));
        if tr.status == TraceStatus::NormalForm && p.conclusion.context.is_empty() {
            let last = tr.last();
            out.record(last.rule.is_intro(), || format!("closed normal proof ends in {}: {}", last.rule, show(theory, last)));
        }
    }
    out
}

/// `[(t/x)A]φ = [A]φ[x := [t]φ]` on `n` random triples.
pub fn substitution_lemma(theory: &TheoryBundle, s: &FiniteStructure, seed: u64, n: usize) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(format!("substitution lemma in {}", theory.name));
    let g = SyntaxGen::new(theory.sig());
    let mut rng = seeded(seed);
    if g.vars.is_empty() {
        return out;
    }
    let mut tries = 0;
    while out.cases < n && tries < 4 * n {
        tries += 1;
        let a = g.prop(&mut rng, 4);
        let x = g.vars.choose(&mut rng).expect("variables").clone();
        let Some(t) = g.term(&mut rng, &x.sort, 3) else { continue };
        let phi: Assignment = g
            .vars
            .iter()
            .map(|v| Ok((v.clone(), s.domain(&v.sort)?.choose(&mut rng).expect("non-empty domain").clone())))
            .collect::<Result<_, crate::model::ModelError>>()
            .unwrap_or_default();
        if phi.len() != g.vars.len() {
            continue;
        }
        let mut sigma = Substitution::new();
        if sigma.insert(x.clone(), t.clone()).is_err() {
            continue;
        }
        let lhs = denote_prop(s, &phi, &apply_subst(&sigma, &a));
        let rhs = denote_term(s, &phi, &t).and_then(|v| {
            let mut phi2 = phi.clone();
            phi2.insert(x.clone(), v);
            denote_prop(s, &phi2, &a)
        });
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        out.record(ok, || format!("A = {a}, x = {}, t = {t}: {lhs:?} vs {rhs:?}", x.name));
    }
    out
}

/// Conclusions of `proofs` denote positive values in every structure.
pub fn soundness(theory: &TheoryBundle, structures: &[FiniteStructure], proofs: &[ProofTree]) -> PropertyOutcome {
    let mut out = PropertyOutcome::new(format!("soundness in {}", theory.name));
    for (i, s) in structures.iter().enumerate() {
        let r = check_soundness_sample(s, proofs, CheckLimits::default());
        out.cases += r.assignments;
        out.failures += r.violations.len();
        for v in r.violations.iter().take(MAX_COUNTEREXAMPLES.saturating_sub(out.counterexamples.len())) {
            out.counterexamples.push(format!("structure {i}: {v:?}"));
        }
    }
    out
}
