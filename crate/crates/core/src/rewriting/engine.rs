use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::rule::{match_atom, match_term, Match, RewriteRule};
use crate::lang::{fresh_name, Binder, Expr, Prop, Signature, Term};

/// Rewrite rules over a signature. Confluence is an assumption recorded as
/// metadata; nothing here checks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    pub sig: Signature,
    pub rules: Vec<RewriteRule>,
    pub assumed_confluent: bool,
}

/// Fuel for searches over reducts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_steps: usize,
    pub max_reducts: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: 10_000, max_reducts: 1_024 }
    }
}

impl Budget {
    /// Both limits must be positive.
    pub fn new(max_steps: usize, max_reducts: usize) -> Option<Budget> {
        (max_steps > 0 && max_reducts > 0).then_some(Budget { max_steps, max_reducts })
    }

    pub fn with_steps(self, max_steps: usize) -> Budget {
        Budget { max_steps: max_steps.max(1), ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub result: Expr,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("fuel exhausted after {steps} steps; last reduct {last}")]
pub struct FuelExhausted {
    pub last: Expr,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Congruence {
    Yes,
    No,
    Undecided,
}

fn instantiate_term(rhs: &Term, m: &Match) -> Term {
    rhs.subst_at(&|v| m.terms.get(v).cloned(), 0).map_sorts(&m.sorts)
}

fn rename_binders(p: &Prop, taken: &mut BTreeSet<Arc<str>>) -> Prop {
    match p {
        Prop::Atom(..) | Prop::Top | Prop::Bot => p.clone(),
        Prop::Imp(a, b) => Prop::imp(rename_binders(a, taken), rename_binders(b, taken)),
        Prop::And(a, b) => Prop::and(rename_binders(a, taken), rename_binders(b, taken)),
        Prop::Or(a, b) => Prop::or(rename_binders(a, taken), rename_binders(b, taken)),
        Prop::Forall(x, b) | Prop::Exists(x, b) => {
            let name = fresh_name(&x.name, taken);
            taken.insert(name.clone());
            let binder = Binder { name, sort: x.sort.clone() };
            let body = Box::new(rename_binders(b, taken));
            if matches!(p, Prop::Forall(..)) {
                Prop::Forall(binder, body)
            } else {
                Prop::Exists(binder, body)
            }
        }
    }
}

impl RewriteSystem {
    pub fn new(sig: Signature, rules: Vec<RewriteRule>) -> Self {
        RewriteSystem { sig, rules, assumed_confluent: true }
    }

    fn apply_term_rule(rule: &RewriteRule, t: &Term) -> Option<Term> {
        let (Expr::Term(lhs), Expr::Term(rhs)) = (&rule.lhs, &rule.rhs) else {
            return None;
        };
        let mut m = Match::default();
        match_term(lhs, t, &rule.sort_params, &mut m).then(|| instantiate_term(rhs, &m))
    }

    fn apply_prop_rule(rule: &RewriteRule, atom: &Prop, taken: &BTreeSet<Arc<str>>) -> Option<Prop> {
        let (Expr::Prop(lhs), Expr::Prop(rhs)) = (&rule.lhs, &rule.rhs) else {
            return None;
        };
        let mut m = Match::default();
        if !match_atom(lhs, atom, &rule.sort_params, &mut m) {
            return None;
        }
        let inst = rhs.subst_at(&|v| m.terms.get(v).cloned(), 0).map_sorts(&m.sorts);
        if rule.fresh.is_empty() {
            Some(inst)
        } else {
            Some(rename_binders(&inst, &mut taken.clone()))
        }
    }

    fn step_term(&self, t: &Term) -> Option<Term> {
        if let Term::App(..) = t {
            for rule in &self.rules {
                if let Some(r) = Self::apply_term_rule(rule, t) {
                    return Some(r);
                }
            }
        }
        match t {
            Term::App(f, args, s) => {
                for (i, a) in args.iter().enumerate() {
                    if let Some(r) = self.step_term(a) {
                        let mut new_args = args.clone();
                        new_args[i] = r;
                        return Some(Term::App(f.clone(), new_args, s.clone()));
                    }
                }
                None
            }
            _ => None,
        }
    }

    fn step_prop(&self, p: &Prop, taken: &BTreeSet<Arc<str>>) -> Option<Prop> {
        match p {
            Prop::Atom(f, args) => {
                for rule in &self.rules {
                    if let Some(r) = Self::apply_prop_rule(rule, p, taken) {
                        return Some(r);
                    }
                }
                for (i, a) in args.iter().enumerate() {
                    if let Some(r) = self.step_term(a) {
                        let mut new_args = args.clone();
                        new_args[i] = r;
                        return Some(Prop::Atom(f.clone(), new_args));
                    }
                }
                None
            }
            Prop::Top | Prop::Bot => None,
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                let rebuild = |x: Prop, y: Prop| match p {
                    Prop::Imp(..) => Prop::imp(x, y),
                    Prop::And(..) => Prop::and(x, y),
                    _ => Prop::or(x, y),
                };
                if let Some(r) = self.step_prop(a, taken) {
                    return Some(rebuild(r, (**b).clone()));
                }
                self.step_prop(b, taken).map(|r| rebuild((**a).clone(), r))
            }
            Prop::Forall(x, b) => self.step_prop(b, taken).map(|r| Prop::Forall(x.clone(), Box::new(r))),
            Prop::Exists(x, b) => self.step_prop(b, taken).map(|r| Prop::Exists(x.clone(), Box::new(r))),
        }
    }

    fn all_term(&self, t: &Term, out: &mut Vec<Term>) {
        if let Term::App(f, args, s) = t {
            for rule in &self.rules {
                if let Some(r) = Self::apply_term_rule(rule, t) {
                    out.push(r);
                }
            }
            for (i, a) in args.iter().enumerate() {
                let mut sub = Vec::new();
                self.all_term(a, &mut sub);
                for r in sub {
                    let mut new_args = args.clone();
                    new_args[i] = r;
                    out.push(Term::App(f.clone(), new_args, s.clone()));
                }
            }
        }
    }

    fn all_prop(&self, p: &Prop, taken: &BTreeSet<Arc<str>>, out: &mut Vec<Prop>) {
        match p {
            Prop::Atom(f, args) => {
                for rule in &self.rules {
                    if let Some(r) = Self::apply_prop_rule(rule, p, taken) {
                        out.push(r);
                    }
                }
                for (i, a) in args.iter().enumerate() {
                    let mut sub = Vec::new();
                    self.all_term(a, &mut sub);
                    for r in sub {
                        let mut new_args = args.clone();
                        new_args[i] = r;
                        out.push(Prop::Atom(f.clone(), new_args));
                    }
                }
            }
            Prop::Top | Prop::Bot => {}
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                let rebuild = |x: Prop, y: Prop| match p {
                    Prop::Imp(..) => Prop::imp(x, y),
                    Prop::And(..) => Prop::and(x, y),
                    _ => Prop::or(x, y),
                };
                let mut sub = Vec::new();
                self.all_prop(a, taken, &mut sub);
                out.extend(sub.drain(..).map(|r| rebuild(r, (**b).clone())));
                self.all_prop(b, taken, &mut sub);
                out.extend(sub.into_iter().map(|r| rebuild((**a).clone(), r)));
            }
            Prop::Forall(x, b) | Prop::Exists(x, b) => {
                let mut sub = Vec::new();
                self.all_prop(b, taken, &mut sub);
                let forall = matches!(p, Prop::Forall(..));
                out.extend(sub.into_iter().map(|r| {
                    if forall {
                        Prop::Forall(x.clone(), Box::new(r))
                    } else {
                        Prop::Exists(x.clone(), Box::new(r))
                    }
                }));
            }
        }
    }

    /// Contracts the leftmost-outermost redex.
    pub fn step(&self, e: &Expr) -> Option<Expr> {
        match e {
            Expr::Term(t) => self.step_term(t).map(Expr::Term),
            Expr::Prop(p) => {
                let mut taken = BTreeSet::new();
                p.names_into(&mut taken);
                self.step_prop(p, &taken).map(Expr::Prop)
            }
        }
    }

    pub fn step_prop_once(&self, p: &Prop) -> Option<Prop> {
        match self.step(&Expr::Prop(p.clone()))? {
            Expr::Prop(r) => Some(r),
            Expr::Term(_) => unreachable!("propositions rewrite to propositions"),
        }
    }

    /// Every one-step reduct, in leftmost-outermost order.
    pub fn reducts(&self, e: &Expr) -> Vec<Expr> {
        match e {
            Expr::Term(t) => {
                let mut out = Vec::new();
                self.all_term(t, &mut out);
                out.into_iter().map(Expr::Term).collect()
            }
            Expr::Prop(p) => {
                let mut taken = BTreeSet::new();
                p.names_into(&mut taken);
                let mut out = Vec::new();
                self.all_prop(p, &taken, &mut out);
                out.into_iter().map(Expr::Prop).collect()
            }
        }
    }

    pub fn normal_form(&self, e: &Expr, budget: Budget) -> Result<NormalForm, FuelExhausted> {
        let mut cur = e.clone();
        let mut steps = 0;
        while let Some(next) = self.step(&cur) {
            if steps == budget.max_steps {
                return Err(FuelExhausted { last: cur, steps });
            }
            cur = next;
            steps += 1;
        }
        Ok(NormalForm { result: cur, steps })
    }

    pub fn normal_form_prop(&self, p: &Prop, budget: Budget) -> Result<Prop, FuelExhausted> {
        match self.normal_form(&Expr::Prop(p.clone()), budget)?.result {
            Expr::Prop(r) => Ok(r),
            Expr::Term(_) => unreachable!("propositions rewrite to propositions"),
        }
    }

    /// Decides `a ≡ b` by growing both reduct sets breadth-first until they
    /// meet. `No` is only returned once both sets are closed under rewriting.
    pub fn congruent(&self, a: &Expr, b: &Expr, budget: Budget) -> Congruence {
        if a == b {
            return Congruence::Yes;
        }
        let mut seen = [HashSet::from([a.clone()]), HashSet::from([b.clone()])];
        let mut frontier = [vec![a.clone()], vec![b.clone()]];
        let mut steps = 0usize;
        loop {
            if frontier[0].is_empty() && frontier[1].is_empty() {
                return Congruence::No;
            }
            for side in 0..2 {
                let layer = std::mem::take(&mut frontier[side]);
                let mut next = Vec::new();
                for e in &layer {
                    for r in self.reducts(e) {
                        steps += 1;
                        if seen[1 - side].contains(&r) {
                            return Congruence::Yes;
                        }
                        if seen[side].contains(&r) {
                            continue;
                        }
                        if steps > budget.max_steps || seen[0].len() + seen[1].len() >= budget.max_reducts {
                            return Congruence::Undecided;
                        }
                        seen[side].insert(r.clone());
                        next.push(r);
                    }
                }
                frontier[side] = next;
            }
        }
    }

    pub fn congruent_props(&self, a: &Prop, b: &Prop, budget: Budget) -> Congruence {
        if a == b {
            return Congruence::Yes;
        }
        self.congruent(&Expr::Prop(a.clone()), &Expr::Prop(b.clone()), budget)
    }
}

pub fn rewrite_step(sys: &RewriteSystem, e: &Expr) -> Option<Expr> {
    sys.step(e)
}

pub fn normal_form(sys: &RewriteSystem, e: &Expr, budget: Budget) -> Result<NormalForm, FuelExhausted> {
    sys.normal_form(e, budget)
}

pub fn congruent(sys: &RewriteSystem, a: &Expr, b: &Expr, budget: Budget) -> Congruence {
    sys.congruent(a, b, budget)
}
