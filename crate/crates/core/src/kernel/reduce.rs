use std::collections::HashMap;

use serde::Serialize;

use super::check::resolve_hyp;
use super::ops::{canonical, cut_hyp, rename_eigen, retarget, subst_proof, weaken};
use super::tree::{open_quant, ProofTree, Rule, RuleData};
use crate::lang::{Prop, Sequent, Substitution, Syntax, Term};
use crate::rewriting::{Budget, Congruence};
use crate::theories::TheoryBundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TraceStatus {
    NormalForm,
    FuelExhausted,
    /// The last proof repeats the one at `repeat_index`.
    CycleDetected { repeat_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub proofs: Vec<ProofTree>,
    pub status: TraceStatus,
}

impl ReductionTrace {
    pub fn last(&self) -> &ProofTree {
        self.proofs.last().expect("a trace is never empty")
    }

    pub fn steps(&self) -> usize {
        self.proofs.len() - 1
    }
}

/// Kinds of redex, as found by [`find_redexes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RedexKind {
    /// An elimination whose major premise is the matching introduction.
    Detour,
    /// An elimination whose major premise ends in `orE` or `exE`.
    Permutative,
}

struct Reducer<'a> {
    theory: &'a TheoryBundle,
    budget: Budget,
}

impl Reducer<'_> {
    fn yes(&self, a: &Prop, b: &Prop) -> bool {
        a == b || self.theory.system.congruent_props(a, b, self.budget) == Congruence::Yes
    }

    /// Classifies the root of `node` as a redex.
    fn redex_kind(&self, node: &ProofTree) -> Option<RedexKind> {
        let m = node.rule.major_premise()?;
        let major = node.premises.get(m)?;
        if matches!(major.rule, Rule::OrE | Rule::ExE) {
            return Some(RedexKind::Permutative);
        }
        let detour = match (node.rule, &node.data, major.rule, &major.data) {
            (Rule::ImpE, RuleData::Conn { a, b }, Rule::ImpI, RuleData::Conn { a: ai, b: bi }) => {
                self.yes(a, ai) && self.yes(b, bi)
            }
            (Rule::AndE1, RuleData::Conn { a, .. }, Rule::AndI, RuleData::Conn { a: ai, .. }) => self.yes(a, ai),
            (Rule::AndE2, RuleData::Conn { b, .. }, Rule::AndI, RuleData::Conn { b: bi, .. }) => self.yes(b, bi),
            (Rule::OrE, RuleData::Conn { a, .. }, Rule::OrI1, RuleData::Conn { a: ai, .. }) => self.yes(a, ai),
            (Rule::OrE, RuleData::Conn { b, .. }, Rule::OrI2, RuleData::Conn { b: bi, .. }) => self.yes(b, bi),
            (Rule::AllE, RuleData::Inst { quant, .. }, Rule::AllI, RuleData::Eigen { quant: qi, .. }) => self.yes(quant, qi),
            (Rule::ExE, RuleData::Eigen { quant, .. }, Rule::ExI, RuleData::Inst { quant: qi, .. }) => self.yes(quant, qi),
            _ => false,
        };
        detour.then_some(RedexKind::Detour)
    }

    fn contract(&self, node: &ProofTree, kind: RedexKind) -> ProofTree {
        match kind {
            RedexKind::Detour => self.detour(node),
            RedexKind::Permutative => self.permute(node),
        }
    }

    fn detour(&self, node: &ProofTree) -> ProofTree {
        let n = node.context().len();
        let goal = node.goal();
        let m = node.rule.major_premise().expect("elimination");
        let major = &node.premises[m];
        match (node.rule, major.rule) {
            (Rule::ImpE, _) => retarget(&cut_hyp(&major.premises[0], n, &node.premises[1]), goal),
            (Rule::AndE1, _) => retarget(&major.premises[0], goal),
            (Rule::AndE2, _) => retarget(&major.premises[1], goal),
            (Rule::OrE, Rule::OrI1) => cut_hyp(&node.premises[0], n, &major.premises[0]),
            (Rule::OrE, _) => cut_hyp(&node.premises[1], n, &major.premises[0]),
            (Rule::AllE, _) => {
                let (RuleData::Inst { witness, .. }, RuleData::Eigen { var, .. }) = (&node.data, &major.data) else {
                    unreachable!("checked by redex_kind")
                };
                let sigma = Substitution::single(var.clone(), witness.clone()).expect("sorts checked");
                retarget(&subst_proof(&major.premises[0], &sigma), goal)
            }
            (Rule::ExE, _) => {
                let (RuleData::Eigen { var, .. }, RuleData::Inst { witness, .. }) = (&node.data, &major.data) else {
                    unreachable!("checked by redex_kind")
                };
                let sigma = Substitution::single(var.clone(), witness.clone()).expect("sorts checked");
                let body = subst_proof(&node.premises[1], &sigma);
                cut_hyp(&body, n, &major.premises[0])
            }
            _ => unreachable!("not a detour"),
        }
    }

    /// Moves the elimination `node` into the branches of its major premise.
    fn permute(&self, node: &ProofTree) -> ProofTree {
        let n = node.context().len();
        let m = node.rule.major_premise().expect("elimination");
        let mut avoid = Default::default();
        node.names_into(&mut avoid);
        let major = rename_eigen(&node.premises[m], &avoid);
        // Rebuild `node` in a context extended by `hyp`, with `inner` as major premise.
        let rebuild = |inner: &ProofTree, hyp: &Prop| -> ProofTree {
            let premises = node
                .premises
                .iter()
                .enumerate()
                .map(|(i, p)| if i == m { inner.clone() } else { weaken(p, n, std::slice::from_ref(hyp)) })
                .collect();
            let e = ProofTree {
                rule: node.rule,
                conclusion: Sequent { context: node.context().weaken(n, std::slice::from_ref(hyp)), conclusion: node.goal().clone() },
                data: node.data.clone(),
                premises,
            };
            match &e.data {
                RuleData::Eigen { var, .. } if hyp.free_vars().contains(var) => {
                    let clash = hyp.free_vars().iter().map(|v| v.name.clone()).collect();
                    rename_eigen(&e, &clash)
                }
                _ => e,
            }
        };
        let concl = node.conclusion.clone();
        match (&major.rule, &major.data) {
            (Rule::OrE, RuleData::Conn { a, b }) => {
                let left = rebuild(&major.premises[0], a);
                let right = rebuild(&major.premises[1], b);
                ProofTree { rule: Rule::OrE, conclusion: concl, data: major.data.clone(), premises: vec![left, right, major.premises[2].clone()] }
            }
            (Rule::ExE, RuleData::Eigen { quant, var }) => {
                let hyp = open_quant(quant, &Term::Var(var.clone())).expect("quantifier");
                let inner = rebuild(&major.premises[1], &hyp);
                ProofTree { rule: Rule::ExE, conclusion: concl, data: major.data.clone(), premises: vec![major.premises[0].clone(), inner] }
            }
            _ => unreachable!("not a permutative redex"),
        }
    }

    fn step(&self, p: &ProofTree) -> Option<ProofTree> {
        if let Some(kind) = self.redex_kind(p) {
            return Some(self.contract(p, kind));
        }
        for (i, q) in p.premises.iter().enumerate() {
            if let Some(r) = self.step(q) {
                let mut out = p.clone();
                out.premises[i] = r;
                return Some(out);
            }
        }
        None
    }

    fn find(&self, p: &ProofTree, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, RedexKind)>) {
        if let Some(kind) = self.redex_kind(p) {
            out.push((path.clone(), kind));
        }
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            self.find(q, path, out);
            path.pop();
        }
    }
}

/// Fills in the hypothesis of every axiom node that leaves it implicit.
/// Nodes where no hypothesis is found are left unchanged.
pub fn resolve_hyps(theory: &TheoryBundle, proof: &ProofTree, budget: Budget) -> ProofTree {
    let mut out = proof.clone();
    if let RuleData::Hyp(None) = out.data {
        if let Ok(h) = resolve_hyp(theory, out.context(), out.goal(), budget) {
            out.data = RuleData::Hyp(Some(h));
        }
    }
    out.premises = out.premises.iter().map(|p| resolve_hyps(theory, p, budget)).collect();
    out
}

/// All redexes of `proof` in pre-order, with their paths.
pub fn find_redexes(theory: &TheoryBundle, proof: &ProofTree, budget: Budget) -> Vec<(Vec<usize>, RedexKind)> {
    let r = Reducer { theory, budget };
    let mut out = Vec::new();
    r.find(&resolve_hyps(theory, proof, budget), &mut Vec::new(), &mut out);
    out
}

/// Contracts the leftmost-outermost redex. `None` means the proof is normal.
pub fn reduce_step(theory: &TheoryBundle, proof: &ProofTree, budget: Budget) -> Option<ProofTree> {
    Reducer { theory, budget }.step(&resolve_hyps(theory, proof, budget))
}

/// Iterates [`reduce_step`] at most `fuel` times, stopping early on a normal
/// proof or when a proof repeats up to eigenvariable names.
pub fn normalize(theory: &TheoryBundle, proof: &ProofTree, fuel: usize, budget: Budget) -> ReductionTrace {
    let r = Reducer { theory, budget };
    let first = resolve_hyps(theory, proof, budget);
    let mut seen: HashMap<ProofTree, usize> = HashMap::new();
    seen.insert(canonical(&first), 0);
    let mut proofs = vec![first];
    for _ in 0..fuel {
        let Some(next) = r.step(proofs.last().expect("non-empty")) else {
            return ReductionTrace { proofs, status: TraceStatus::NormalForm };
        };
        let key = canonical(&next);
        proofs.push(next);
        if let Some(&i) = seen.get(&key) {
            return ReductionTrace { proofs, status: TraceStatus::CycleDetected { repeat_index: i } };
        }
        if seen.len() < budget.max_reducts {
            seen.insert(key, proofs.len() - 1);
        }
    }
    let status = if r.step(proofs.last().expect("non-empty")).is_none() { TraceStatus::NormalForm } else { TraceStatus::FuelExhausted };
    ReductionTrace { proofs, status }
}
