//! Theory files.
//!
//! ```text
//! (theory NAME
//!   (sorts i o)
//!   (fun f (i i) i)
//!   (fun K :params (T U) () (-> T U T))
//!   (pred P (i))
//!   (rule :name k :params (T U) :vars ((x T) (y U)) LHS RHS)
//!   (axiom :vars ((x i)) PROP))
//! ```
//!
//! A rule whose left-hand side parses as an atom is a proposition rule;
//! otherwise it is a term rule.

use std::sync::Arc;

use thiserror::Error;

use crate::lang::{
    parse_expr, parse_prop, parse_sort, parse_var_decl, sort_sexp, Expr, ParseError, Printer, Prop, Scope,
    Signature, SortError, Syntax, Var,
};
use crate::rewriting::{RewriteRule, RewriteSystem, RuleError};
use crate::sexp::{self, Sexp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("rule {index}: {source}")]
    Rule { index: usize, source: RuleError },
    #[error(transparent)]
    Sort(#[from] SortError),
}

impl From<sexp::SexpError> for TheoryError {
    fn from(e: sexp::SexpError) -> Self {
        TheoryError::Parse(e.into())
    }
}

/// A theory: signature and congruence (inside the rewrite system) plus axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryBundle {
    pub name: String,
    pub system: RewriteSystem,
    pub axioms: Vec<Prop>,
}

impl TheoryBundle {
    pub fn sig(&self) -> &Signature {
        &self.system.sig
    }

    pub fn parse(src: &str) -> Result<TheoryBundle, TheoryError> {
        parse_theory(&sexp::parse_one(src)?)
    }

    pub fn to_sexp(&self) -> Sexp {
        print_theory(self)
    }

    /// Renders in the theory file format.
    pub fn to_text(&self) -> String {
        let Sexp::List(items) = self.to_sexp() else { unreachable!() };
        let mut out = format!("({} {}", items[0], items[1]);
        for item in &items[2..] {
            out.push_str("\n  ");
            out.push_str(&item.to_pretty(96));
        }
        out.push_str(")\n");
        out
    }
}

fn malformed(what: &'static str, e: &Sexp) -> TheoryError {
    ParseError::malformed(what, e).into()
}

/// Splits `:key value` pairs off the front of `items`.
fn keywords(items: &[Sexp]) -> (Vec<(&str, &Sexp)>, &[Sexp]) {
    let mut kws = Vec::new();
    let mut i = 0;
    while i + 1 < items.len() {
        match items[i].as_atom() {
            Some(k) if k.starts_with(':') && k.len() > 1 => {
                kws.push((&k[1..], &items[i + 1]));
                i += 2;
            }
            _ => break,
        }
    }
    (kws, &items[i..])
}

fn param_list(e: &Sexp) -> Result<Vec<Arc<str>>, TheoryError> {
    e.as_list()
        .ok_or_else(|| malformed("sort parameter list", e))?
        .iter()
        .map(|p| p.as_atom().map(Arc::from).ok_or_else(|| malformed("sort parameter", p)))
        .collect()
}

fn var_list(sig: &Signature, e: &Sexp) -> Result<Vec<Var>, TheoryError> {
    e.as_list()
        .ok_or_else(|| malformed("variable list", e))?
        .iter()
        .map(|v| parse_var_decl(sig, v).map_err(Into::into))
        .collect()
}

pub fn parse_theory(e: &Sexp) -> Result<TheoryBundle, TheoryError> {
    let items = match e.as_list() {
        Some([Sexp::Atom(h), Sexp::Atom(name), rest @ ..]) if h == "theory" => (name.clone(), rest),
        _ => return Err(malformed("theory", e)),
    };
    let (name, decls) = items;
    let mut sig = Signature::new();
    let mut rules = Vec::new();
    let mut axioms = Vec::new();
    for d in decls {
        let list = d.as_list().ok_or_else(|| malformed("declaration", d))?;
        let head = d.head().ok_or_else(|| malformed("declaration", d))?;
        // `fun` and `pred` put the symbol name before the keywords.
        let named = matches!(head, "fun" | "pred");
        let (kws, rest) = if named && list.len() > 1 {
            let (kws, rest) = keywords(&list[2..]);
            (kws, &list[1..2].iter().chain(rest).cloned().collect::<Vec<_>>()[..])
        } else {
            let (kws, rest) = keywords(&list[1..]);
            (kws, rest)
        };
        let params: Vec<Arc<str>> = match kws.iter().find(|(k, _)| *k == "params") {
            Some((_, p)) => param_list(p)?,
            None => Vec::new(),
        };
        let psig = sig.with_sort_params(&params)?;
        let param_refs: Vec<&str> = params.iter().map(|p| &**p).collect();
        match head {
            "sorts" => {
                for s in &list[1..] {
                    sig.add_sort(s.as_atom().ok_or_else(|| malformed("sort name", s))?)?;
                }
            }
            "fun" => match rest {
                [Sexp::Atom(f), Sexp::List(args), result] => {
                    let args = args.iter().map(|a| parse_sort(&psig, a)).collect::<Result<Vec<_>, _>>()?;
                    let result = parse_sort(&psig, result)?;
                    sig.add_fun(f, &param_refs, args, result)?;
                }
                _ => return Err(malformed("function declaration", d)),
            },
            "pred" => match rest {
                [Sexp::Atom(p), Sexp::List(args)] => {
                    let args = args.iter().map(|a| parse_sort(&psig, a)).collect::<Result<Vec<_>, _>>()?;
                    sig.add_pred(p, &param_refs, args)?;
                }
                _ => return Err(malformed("predicate declaration", d)),
            },
            "rule" => {
                let [lhs, rhs] = rest else {
                    return Err(malformed("rule", d));
                };
                let vars = match kws.iter().find(|(k, _)| *k == "vars") {
                    Some((_, v)) => var_list(&psig, v)?,
                    None => Vec::new(),
                };
                let name = kws.iter().find(|(k, _)| *k == "name").and_then(|(_, n)| n.as_atom()).map(String::from);
                let scope = Scope::from_vars(&vars);
                let lhs = parse_expr(&psig, &scope, lhs)?;
                let rhs = match &lhs {
                    Expr::Prop(_) => Expr::Prop(parse_prop(&psig, &scope, rhs)?),
                    Expr::Term(_) => Expr::Term(crate::lang::parse_term(&psig, &scope, rhs)?),
                };
                let rule = RewriteRule::new(&psig, name, params, lhs, rhs)
                    .map_err(|source| TheoryError::Rule { index: rules.len(), source })?;
                rules.push(rule);
            }
            "axiom" => {
                let [p] = rest else {
                    return Err(malformed("axiom", d));
                };
                let vars = match kws.iter().find(|(k, _)| *k == "vars") {
                    Some((_, v)) => var_list(&sig, v)?,
                    None => Vec::new(),
                };
                axioms.push(parse_prop(&sig, &Scope::from_vars(&vars), p)?);
            }
            _ => return Err(malformed("declaration", d)),
        }
    }
    Ok(TheoryBundle { name, system: RewriteSystem::new(sig, rules), axioms })
}

fn params_sexp(params: &[Arc<str>]) -> Sexp {
    Sexp::List(params.iter().map(|p| Sexp::atom(&**p)).collect())
}

fn vars_sexp<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Sexp {
    Sexp::List(vars.into_iter().map(|v| Sexp::list([Sexp::atom(&*v.name), sort_sexp(&v.sort)])).collect())
}

pub fn print_theory(t: &TheoryBundle) -> Sexp {
    let sig = t.sig();
    let mut items = vec![Sexp::atom("theory"), Sexp::atom(&t.name)];
    let mut sorts = vec![Sexp::atom("sorts")];
    sorts.extend(sig.base_sorts().map(|s| Sexp::atom(&**s)));
    items.push(Sexp::List(sorts));
    for (name, decl) in sig.funs() {
        let mut v = vec![Sexp::atom("fun"), Sexp::atom(&**name)];
        if !decl.params.is_empty() {
            v.push(Sexp::atom(":params"));
            v.push(params_sexp(&decl.params));
        }
        v.push(Sexp::List(decl.args.iter().map(sort_sexp).collect()));
        v.push(sort_sexp(&decl.result));
        items.push(Sexp::List(v));
    }
    for (name, decl) in sig.preds() {
        let mut v = vec![Sexp::atom("pred"), Sexp::atom(&**name)];
        if !decl.params.is_empty() {
            v.push(Sexp::atom(":params"));
            v.push(params_sexp(&decl.params));
        }
        v.push(Sexp::List(decl.args.iter().map(sort_sexp).collect()));
        items.push(Sexp::List(v));
    }
    for rule in &t.system.rules {
        let psig = sig.with_sort_params(&rule.sort_params).expect("rule parameters were validated");
        let printer = Printer::new(&psig);
        let mut v = vec![Sexp::atom("rule")];
        if let Some(n) = &rule.name {
            v.push(Sexp::atom(":name"));
            v.push(Sexp::atom(n));
        }
        if !rule.sort_params.is_empty() {
            v.push(Sexp::atom(":params"));
            v.push(params_sexp(&rule.sort_params));
        }
        if !rule.vars.is_empty() {
            v.push(Sexp::atom(":vars"));
            v.push(vars_sexp(&rule.vars));
        }
        for side in [&rule.lhs, &rule.rhs] {
            v.push(match side {
                Expr::Term(t) => printer.term(t),
                Expr::Prop(p) => printer.prop(p),
            });
        }
        items.push(Sexp::List(v));
    }
    let printer = Printer::new(sig);
    for ax in &t.axioms {
        let mut v = vec![Sexp::atom("axiom")];
        let fv = ax.free_vars();
        if !fv.is_empty() {
            v.push(Sexp::atom(":vars"));
            v.push(vars_sexp(&fv));
        }
        v.push(printer.prop(ax));
        items.push(Sexp::List(v));
    }
    Sexp::List(items)
}
