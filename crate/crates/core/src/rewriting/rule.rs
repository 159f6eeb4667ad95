use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::lang::{check_prop, well_sorted, Expr, Prop, Signature, SortError, SortSubst, Substitution, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("left-hand side of a term rule must not be a variable: {0}")]
    VariableLhs(String),
    #[error("left-hand side of a proposition rule must be atomic: {0}")]
    NonAtomicLhs(String),
    #[error("term rule has a proposition on one side")]
    KindMismatch,
    #[error("variable `{var}` of the right-hand side does not occur on the left")]
    UnboundRhsVariable { var: String },
    #[error("sort parameter `{param}` of the right-hand side does not occur on the left")]
    UnboundSortParam { param: String },
    #[error("sides have different sorts: {lhs} vs {rhs}")]
    SortMismatch { lhs: String, rhs: String },
    #[error(transparent)]
    Sort(#[from] SortError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Term,
    Prop,
}

/// An oriented rule `lhs --> rhs` on terms, or on atoms to propositions.
///
/// Sort parameters make the rule a scheme: they are matched against the sorts
/// of the subject, so one rule stands for all its sort instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: Option<String>,
    pub sort_params: Vec<Arc<str>>,
    pub vars: Vec<Var>,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Binder names of the right-hand side, renamed apart on every application.
    pub fresh: Vec<Arc<str>>,
}

fn binder_names(p: &Prop, out: &mut Vec<Arc<str>>) {
    match p {
        Prop::Atom(..) | Prop::Top | Prop::Bot => {}
        Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            binder_names(a, out);
            binder_names(b, out);
        }
        Prop::Forall(x, b) | Prop::Exists(x, b) => {
            out.push(x.name.clone());
            binder_names(b, out);
        }
    }
}

fn expr_free_vars(e: &Expr) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    match e {
        Expr::Term(t) => t.free_vars_into(&mut out),
        Expr::Prop(p) => p.free_vars_into(&mut out),
    }
    out
}

fn sort_params_used(e: &Expr, params: &[Arc<str>]) -> BTreeSet<Arc<str>> {
    fn term(t: &Term, params: &[Arc<str>], out: &mut BTreeSet<Arc<str>>) {
        let mention = |s: &crate::lang::Sort, out: &mut BTreeSet<Arc<str>>| {
            for p in params {
                if s.mentions(p) {
                    out.insert(p.clone());
                }
            }
        };
        match t {
            Term::Var(v) => mention(&v.sort, out),
            Term::Bound(_, s) => mention(s, out),
            Term::App(f, args, s) => {
                mention(s, out);
                f.indices.iter().for_each(|i| mention(i, out));
                args.iter().for_each(|a| term(a, params, out));
            }
        }
    }
    fn prop(p: &Prop, params: &[Arc<str>], out: &mut BTreeSet<Arc<str>>) {
        match p {
            Prop::Atom(s, args) => {
                for i in &s.indices {
                    for q in params {
                        if i.mentions(q) {
                            out.insert(q.clone());
                        }
                    }
                }
                args.iter().for_each(|a| term(a, params, out));
            }
            Prop::Top | Prop::Bot => {}
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                prop(a, params, out);
                prop(b, params, out);
            }
            Prop::Forall(x, b) | Prop::Exists(x, b) => {
                for q in params {
                    if x.sort.mentions(q) {
                        out.insert(q.clone());
                    }
                }
                prop(b, params, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    match e {
        Expr::Term(t) => term(t, params, &mut out),
        Expr::Prop(p) => prop(p, params, &mut out),
    }
    out
}

impl RewriteRule {
    /// Validates and builds a rule. `sig` must already contain the sort
    /// parameters as base sorts (see [`Signature::with_sort_params`]).
    pub fn new(
        sig: &Signature,
        name: Option<String>,
        sort_params: Vec<Arc<str>>,
        lhs: Expr,
        rhs: Expr,
    ) -> Result<RewriteRule, RuleError> {
        match (&lhs, &rhs) {
            (Expr::Term(Term::App(..)), Expr::Term(r)) => {
                let Expr::Term(l) = &lhs else { unreachable!() };
                let (ls, rs) = (well_sorted(sig, l)?, well_sorted(sig, r)?);
                if ls != rs {
                    return Err(RuleError::SortMismatch { lhs: ls.to_string(), rhs: rs.to_string() });
                }
            }
            (Expr::Term(t), Expr::Term(_)) => return Err(RuleError::VariableLhs(t.to_string())),
            (Expr::Prop(l @ Prop::Atom(..)), Expr::Prop(r)) => {
                check_prop(sig, l)?;
                check_prop(sig, r)?;
            }
            (Expr::Prop(l), Expr::Prop(_)) => return Err(RuleError::NonAtomicLhs(l.to_string())),
            _ => return Err(RuleError::KindMismatch),
        }
        let lhs_vars = expr_free_vars(&lhs);
        if let Some(v) = expr_free_vars(&rhs).difference(&lhs_vars).next() {
            return Err(RuleError::UnboundRhsVariable { var: v.name.to_string() });
        }
        let lhs_params = sort_params_used(&lhs, &sort_params);
        if let Some(p) = sort_params_used(&rhs, &sort_params).difference(&lhs_params).next() {
            return Err(RuleError::UnboundSortParam { param: p.to_string() });
        }
        let mut fresh = Vec::new();
        if let Expr::Prop(r) = &rhs {
            binder_names(r, &mut fresh);
        }
        Ok(RewriteRule { name, sort_params, vars: lhs_vars.into_iter().collect(), lhs, rhs, fresh })
    }

    pub fn kind(&self) -> RuleKind {
        match self.lhs {
            Expr::Term(_) => RuleKind::Term,
            Expr::Prop(_) => RuleKind::Prop,
        }
    }

    pub fn is_left_linear(&self) -> bool {
        fn count(t: &Term, seen: &mut BTreeSet<Var>) -> bool {
            match t {
                Term::Var(v) => seen.insert(v.clone()),
                Term::Bound(..) => true,
                Term::App(_, args, _) => args.iter().all(|a| count(a, seen)),
            }
        }
        let mut seen = BTreeSet::new();
        match &self.lhs {
            Expr::Term(t) => count(t, &mut seen),
            Expr::Prop(Prop::Atom(_, args)) => args.iter().all(|a| count(a, &mut seen)),
            Expr::Prop(_) => true,
        }
    }
}

/// Result of matching a rule's left-hand side.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Match {
    pub sorts: SortSubst,
    pub terms: BTreeMap<Var, Term>,
}

pub(crate) fn match_term(pat: &Term, subject: &Term, params: &[Arc<str>], m: &mut Match) -> bool {
    match pat {
        Term::Var(v) => {
            if !v.sort.match_into(subject.sort(), params, &mut m.sorts) {
                return false;
            }
            match m.terms.get(v) {
                Some(bound) => bound == subject,
                None => {
                    m.terms.insert(v.clone(), subject.clone());
                    true
                }
            }
        }
        Term::Bound(..) => pat == subject,
        Term::App(f, args, _) => match subject {
            Term::App(g, sargs, _) => {
                f.name == g.name
                    && f.indices.len() == g.indices.len()
                    && args.len() == sargs.len()
                    && f.indices.iter().zip(&g.indices).all(|(a, b)| a.match_into(b, params, &mut m.sorts))
                    && args.iter().zip(sargs).all(|(a, b)| match_term(a, b, params, m))
            }
            _ => false,
        },
    }
}

pub(crate) fn match_atom(pat: &Prop, subject: &Prop, params: &[Arc<str>], m: &mut Match) -> bool {
    match (pat, subject) {
        (Prop::Atom(f, args), Prop::Atom(g, sargs)) => {
            f.name == g.name
                && f.indices.len() == g.indices.len()
                && args.len() == sargs.len()
                && f.indices.iter().zip(&g.indices).all(|(a, b)| a.match_into(b, params, &mut m.sorts))
                && args.iter().zip(sargs).all(|(a, b)| match_term(a, b, params, m))
        }
        _ => false,
    }
}

/// First-order matching: every free variable of `pattern` is a pattern variable.
/// Repeated variables must match alpha-equivalent subterms.
pub fn match_pattern(pattern: &Expr, subject: &Expr) -> Option<Substitution> {
    let mut m = Match::default();
    let ok = match (pattern, subject) {
        (Expr::Term(p), Expr::Term(s)) => match_term(p, s, &[], &mut m),
        (Expr::Prop(p), Expr::Prop(s)) => match_atom(p, s, &[], &mut m),
        _ => false,
    };
    if !ok {
        return None;
    }
    let mut sigma = Substitution::new();
    for (v, t) in m.terms {
        sigma.insert(v, t).ok()?;
    }
    Some(sigma)
}
