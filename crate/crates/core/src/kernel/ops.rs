//! Structural operations on proofs used by reduction: substitution of terms,
//! weakening, retargeting a conclusion along the congruence, and cutting a
//! hypothesis against a proof of it.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::tree::{Hyp, ProofTree, RuleData};
use crate::lang::{fresh_name, Context, Prop, Sequent, Substitution, Syntax, Term, Var};

fn map_context(ctx: &Context, sigma: &Substitution) -> Context {
    Context(ctx.iter().map(|p| sigma.apply(p)).collect())
}

/// A variable named like `var` whose name occurs nowhere in `taken`.
pub(crate) fn fresh_var(var: &Var, taken: &BTreeSet<Arc<str>>) -> Var {
    Var { name: fresh_name(&var.name, taken), sort: var.sort.clone() }
}

/// Renames the eigenvariable of an `allI`/`exE` node to one whose name is
/// absent from `avoid` and from the node itself. Other nodes are returned as is.
pub fn rename_eigen(node: &ProofTree, avoid: &BTreeSet<Arc<str>>) -> ProofTree {
    let (RuleData::Eigen { quant, var }, Some(scope)) = (&node.data, node.rule.eigen_scope()) else {
        return node.clone();
    };
    let mut taken = avoid.clone();
    node.names_into(&mut taken);
    let fresh = fresh_var(var, &taken);
    let sigma = Substitution::single(var.clone(), Term::Var(fresh.clone())).expect("same sort");
    let mut out = node.clone();
    out.premises[scope] = subst_proof(&node.premises[scope], &sigma);
    out.data = RuleData::Eigen { quant: quant.clone(), var: fresh };
    out
}

/// Applies a term substitution to every sequent and instance datum. Eigenvariables
/// are local to their scope: they are never substituted and get renamed when
/// they would capture a variable of the range.
pub fn subst_proof(p: &ProofTree, sigma: &Substitution) -> ProofTree {
    if sigma.is_empty() {
        return p.clone();
    }
    let conclusion = Sequent { context: map_context(&p.conclusion.context, sigma), conclusion: sigma.apply(&p.conclusion.conclusion) };
    let (data, premises) = match &p.data {
        RuleData::None | RuleData::Hyp(_) => (p.data.clone(), p.premises.iter().map(|q| subst_proof(q, sigma)).collect()),
        RuleData::Conn { a, b } => (
            RuleData::Conn { a: sigma.apply(a), b: sigma.apply(b) },
            p.premises.iter().map(|q| subst_proof(q, sigma)).collect(),
        ),
        RuleData::Inst { quant, witness } => (
            RuleData::Inst { quant: sigma.apply(quant), witness: sigma.apply(witness) },
            p.premises.iter().map(|q| subst_proof(q, sigma)).collect(),
        ),
        RuleData::Eigen { quant, var } => {
            let scope = p.rule.eigen_scope().expect("eigenvariable rule");
            let range = sigma.range_vars();
            let mut inner = sigma.clone();
            inner.remove(var);
            let mut new_var = var.clone();
            if range.contains(var) {
                let mut taken: BTreeSet<Arc<str>> = range.iter().map(|v| v.name.clone()).collect();
                sigma.iter().for_each(|(v, _)| {
                    taken.insert(v.name.clone());
                });
                p.names_into(&mut taken);
                new_var = fresh_var(var, &taken);
                inner.insert(var.clone(), Term::Var(new_var.clone())).expect("same sort");
            }
            let premises = p
                .premises
                .iter()
                .enumerate()
                .map(|(i, q)| if i == scope { subst_proof(q, &inner) } else { subst_proof(q, sigma) })
                .collect();
            (RuleData::Eigen { quant: sigma.apply(quant), var: new_var }, premises)
        }
    };
    ProofTree { rule: p.rule, conclusion, data, premises }
}

/// Inserts `extra` into every context of `p` at position `at`.
pub fn weaken(p: &ProofTree, at: usize, extra: &[Prop]) -> ProofTree {
    if extra.is_empty() {
        return p.clone();
    }
    let mut extra_vars = BTreeSet::new();
    extra.iter().for_each(|e| e.free_vars_into(&mut extra_vars));
    let node = match &p.data {
        RuleData::Eigen { var, .. } if extra_vars.contains(var) => {
            let avoid = extra_vars.iter().map(|v| v.name.clone()).collect();
            rename_eigen(p, &avoid)
        }
        _ => p.clone(),
    };
    let data = match node.data {
        RuleData::Hyp(Some(Hyp::Context(i))) if i >= at => RuleData::Hyp(Some(Hyp::Context(i + extra.len()))),
        d => d,
    };
    ProofTree {
        rule: node.rule,
        conclusion: Sequent { context: node.conclusion.context.weaken(at, extra), conclusion: node.conclusion.conclusion },
        data,
        premises: node.premises.iter().map(|q| weaken(q, at, extra)).collect(),
    }
}

/// Re-concludes `p` with `goal`, which must be congruent to its current goal.
/// Rules whose conclusion is pinned by their instance data or premises are
/// adjusted so the result still checks.
pub fn retarget(p: &ProofTree, goal: &Prop) -> ProofTree {
    use super::tree::Rule;
    if p.goal() == goal {
        return p.clone();
    }
    let mut out = p.clone();
    out.conclusion.conclusion = goal.clone();
    match (p.rule, &mut out.data) {
        (Rule::ImpE | Rule::AndE2, RuleData::Conn { b, .. }) => *b = goal.clone(),
        (Rule::AndE1, RuleData::Conn { a, .. }) => *a = goal.clone(),
        (Rule::OrE, _) => {
            out.premises[0] = retarget(&p.premises[0], goal);
            out.premises[1] = retarget(&p.premises[1], goal);
        }
        (Rule::ExE, RuleData::Eigen { var, .. }) => {
            let clash = goal.free_vars().contains(var);
            let mut node = if clash {
                let avoid = goal.free_vars().iter().map(|v| v.name.clone()).collect();
                rename_eigen(p, &avoid)
            } else {
                p.clone()
            };
            node.conclusion.conclusion = goal.clone();
            node.premises[1] = retarget(&node.premises[1], goal);
            return node;
        }
        _ => {}
    }
    out
}

/// Removes hypothesis `pos` from every context of `p`, replacing each axiom
/// on it by `rho` (a proof of `Γ ⊢ A'` with `Γ` the first `pos` hypotheses),
/// weakened and retargeted to the axiom's conclusion.
pub fn cut_hyp(p: &ProofTree, pos: usize, rho: &ProofTree) -> ProofTree {
    if let RuleData::Hyp(Some(Hyp::Context(i))) = p.data {
        if i == pos {
            let delta = &p.context().0[pos + 1..];
            return retarget(&weaken(rho, pos, delta), p.goal());
        }
    }
    let data = match &p.data {
        RuleData::Hyp(Some(Hyp::Context(i))) if *i > pos => RuleData::Hyp(Some(Hyp::Context(i - 1))),
        d => d.clone(),
    };
    ProofTree {
        rule: p.rule,
        conclusion: Sequent { context: p.context().without(pos), conclusion: p.goal().clone() },
        data,
        premises: p.premises.iter().map(|q| cut_hyp(q, pos, rho)).collect(),
    }
}

/// Renames every eigenvariable to a canonical name, so that proofs differing
/// only in eigenvariable names become equal.
pub fn canonical(p: &ProofTree) -> ProofTree {
    fn go(p: &ProofTree, counter: &mut usize) -> ProofTree {
        let mut node = p.clone();
        if let (RuleData::Eigen { quant, var }, Some(scope)) = (&p.data, p.rule.eigen_scope()) {
            let fresh = Var { name: Arc::from(format!("#{counter}")), sort: var.sort.clone() };
            *counter += 1;
            let sigma = Substitution::single(var.clone(), Term::Var(fresh.clone())).expect("same sort");
            node.premises[scope] = subst_proof(&p.premises[scope], &sigma);
            node.data = RuleData::Eigen { quant: quant.clone(), var: fresh };
        }
        node.premises = node.premises.iter().map(|q| go(q, counter)).collect();
        node
    }
    go(p, &mut 0)
}
