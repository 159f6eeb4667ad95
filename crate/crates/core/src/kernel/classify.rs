//! Neutral and cut-free proofs. Both are purely structural, so they work on
//! anything exposing rule tags and premises.

use super::tree::{ProofTree, Rule};
use crate::sexp::Sexp;

pub trait ProofShape: Sized {
    fn rule(&self) -> Rule;
    fn subproofs(&self) -> &[Self];
}

impl ProofShape for ProofTree {
    fn rule(&self) -> Rule {
        self.rule
    }
    fn subproofs(&self) -> &[Self] {
        &self.premises
    }
}

/// Rule tags only, as read from a proof file without a theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofSkeleton {
    pub rule: Rule,
    pub premises: Vec<ProofSkeleton>,
}

impl ProofShape for ProofSkeleton {
    fn rule(&self) -> Rule {
        self.rule
    }
    fn subproofs(&self) -> &[Self] {
        &self.premises
    }
}

impl ProofSkeleton {
    /// Reads the tree shape of a proof file: keyword values are skipped and
    /// every other list is a premise. A `(proof ...)` wrapper is allowed.
    pub fn from_sexp(e: &Sexp) -> Option<ProofSkeleton> {
        let items = e.as_list()?;
        let head = items.first()?.as_atom()?;
        if head == "proof" {
            return items.iter().skip(1).filter(|i| i.head() != Some("vars")).find_map(ProofSkeleton::from_sexp);
        }
        let rule = Rule::from_name(head)?;
        let mut premises = Vec::new();
        let mut i = 1;
        while i < items.len() {
            match items[i].as_atom() {
                Some(k) if k.starts_with(':') => i += 2,
                Some(_) => return None,
                None => {
                    premises.push(ProofSkeleton::from_sexp(&items[i])?);
                    i += 1;
                }
            }
        }
        Some(ProofSkeleton { rule, premises })
    }
}

impl From<&ProofTree> for ProofSkeleton {
    fn from(p: &ProofTree) -> Self {
        ProofSkeleton { rule: p.rule, premises: p.premises.iter().map(ProofSkeleton::from).collect() }
    }
}

/// The last rule is the axiom rule or an elimination rule.
pub fn is_neutral<P: ProofShape>(p: &P) -> bool {
    let r = p.rule();
    r == Rule::Axiom || r.is_elim()
}

pub fn is_cut_free<P: ProofShape>(p: &P) -> bool {
    let r = p.rule();
    let subs = p.subproofs();
    match r.major_premise() {
        None => subs.iter().all(is_cut_free),
        Some(m) => subs.iter().enumerate().all(|(i, s)| is_cut_free(s) && (i != m || is_neutral(s))),
    }
}
