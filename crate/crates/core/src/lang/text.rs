//! S-expression syntax for sorts, terms, propositions and sequents.
//!
//! ```text
//! sort  ::= name | (-> sort sort ...)
//! term  ::= var | const | (_ f sort...) | (f term...) | ((_ f sort...) term...) | (: x sort)
//! prop  ::= true | false | P | (P term...) | (=> prop prop) | (and prop prop) | (or prop prop)
//!         | (forall (x sort) prop) | (exists (x sort) prop)
//! seq   ::= (seq (prop...) prop)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::error::{ParseError, SortError};
use super::signature::Signature;
use super::sort::Sort;
use super::syntax::{Binder, Context, Prop, Sequent, Symbol, Term, Var};
use crate::sexp::{self, Sexp};

pub const RESERVED: &[&str] = &["true", "false", "=>", "and", "or", "forall", "exists", "_", ":", "seq", "->"];

/// Free variables visible while parsing, keyed by name.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    vars: BTreeMap<Arc<str>, Var>,
}

impl Scope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vars<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Self {
        let mut s = Self::new();
        for v in vars {
            s.declare(v.clone());
        }
        s
    }

    pub fn declare(&mut self, v: Var) {
        self.vars.insert(v.name.clone(), v);
    }

    pub fn with(&self, v: Var) -> Scope {
        let mut s = self.clone();
        s.declare(v);
        s
    }

    pub fn get(&self, name: &str) -> Option<&Var> {
        self.vars.get(name)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.vars.values()
    }
}

pub fn parse_sort(sig: &Signature, e: &Sexp) -> Result<Sort, ParseError> {
    match e {
        Sexp::Atom(a) => {
            if sig.has_sort(a) {
                Ok(Sort::base(a))
            } else {
                Err(SortError::UnknownSort { sort: a.clone() }.into())
            }
        }
        Sexp::List(items) => match items.split_first() {
            Some((head, rest)) if head.as_atom() == Some("->") && rest.len() >= 2 => {
                let sorts = rest.iter().map(|s| parse_sort(sig, s)).collect::<Result<Vec<_>, _>>()?;
                let (last, init) = sorts.split_last().expect("at least two");
                Ok(Sort::arrows(init, last.clone()))
            }
            _ => Err(ParseError::malformed("sort", e)),
        },
    }
}

/// Parses `(x T)`.
pub fn parse_var_decl(sig: &Signature, e: &Sexp) -> Result<Var, ParseError> {
    match e.as_list() {
        Some([Sexp::Atom(x), s]) if !RESERVED.contains(&x.as_str()) => Ok(Var::new(x, parse_sort(sig, s)?)),
        _ => Err(ParseError::malformed("variable declaration", e)),
    }
}

struct Parser<'a> {
    sig: &'a Signature,
    scope: &'a Scope,
    binders: Vec<(Arc<str>, Sort)>,
}

impl Parser<'_> {
    fn lookup_bound(&self, name: &str) -> Option<Term> {
        self.binders
            .iter()
            .rev()
            .position(|(n, _)| &**n == name)
            .map(|k| Term::Bound(k as u32, self.binders[self.binders.len() - 1 - k].1.clone()))
    }

    fn indices(&self, items: &[Sexp]) -> Result<Vec<Sort>, ParseError> {
        items.iter().map(|s| parse_sort(self.sig, s)).collect()
    }

    fn term(&mut self, e: &Sexp) -> Result<Term, ParseError> {
        match e {
            Sexp::Atom(a) => {
                if let Some(t) = self.lookup_bound(a) {
                    return Ok(t);
                }
                if let Some(v) = self.scope.get(a) {
                    return Ok(Term::Var(v.clone()));
                }
                if self.sig.fun(a).is_some() {
                    return Ok(self.sig.mk_app(a, Vec::new(), Vec::new())?);
                }
                Err(SortError::UnknownSymbol { symbol: a.clone(), subterm: a.clone() }.into())
            }
            Sexp::List(items) => match items.as_slice() {
                [Sexp::Atom(colon), Sexp::Atom(x), s] if colon == ":" => {
                    Ok(Term::Var(Var::new(x, parse_sort(self.sig, s)?)))
                }
                [Sexp::Atom(us), Sexp::Atom(f), idx @ ..] if us == "_" => {
                    Ok(self.sig.mk_app(f, self.indices(idx)?, Vec::new())?)
                }
                [Sexp::List(head), args @ ..] if head.first().and_then(Sexp::as_atom) == Some("_") => {
                    let (f, idx) = match head.as_slice() {
                        [_, Sexp::Atom(f), idx @ ..] => (f, idx),
                        _ => return Err(ParseError::malformed("indexed symbol", e)),
                    };
                    let indices = self.indices(idx)?;
                    let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                    Ok(self.sig.mk_app(f, indices, args)?)
                }
                [Sexp::Atom(f), args @ ..] if !RESERVED.contains(&f.as_str()) => {
                    let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                    self.app_inferred(f, args, e)
                }
                _ => Err(ParseError::malformed("term", e)),
            },
        }
    }

    fn app_inferred(&self, f: &str, args: Vec<Term>, e: &Sexp) -> Result<Term, ParseError> {
        match self.sig.fun(f) {
            Some(decl) if !decl.params.is_empty() && !decl.indices_inferable() => {
                Err(ParseError::IndicesNotInferable { symbol: f.to_string(), subterm: e.to_string() })
            }
            _ => self.sig.mk_app(f, Vec::new(), args).map_err(|err| match err {
                SortError::UnknownSymbol { symbol, .. } => {
                    SortError::UnknownSymbol { symbol, subterm: e.to_string() }.into()
                }
                SortError::SortMismatch { expected, found, .. } => {
                    SortError::SortMismatch { subterm: e.to_string(), expected, found }.into()
                }
                SortError::ArityMismatch { symbol, expected, found, .. } => {
                    SortError::ArityMismatch { symbol, expected, found, subterm: e.to_string() }.into()
                }
                other => other.into(),
            }),
        }
    }

    fn atom(&mut self, name: &str, indices: Option<Vec<Sort>>, args: &[Sexp], e: &Sexp) -> Result<Prop, ParseError> {
        let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
        let decl = self.sig.pred(name).ok_or_else(|| SortError::UnknownSymbol {
            symbol: name.to_string(),
            subterm: e.to_string(),
        })?;
        if indices.is_none() && !decl.params.is_empty() && !decl.indices_inferable() {
            return Err(ParseError::IndicesNotInferable { symbol: name.to_string(), subterm: e.to_string() });
        }
        Ok(self.sig.mk_atom(name, indices.unwrap_or_default(), args).map_err(|err| match err {
            SortError::SortMismatch { expected, found, .. } => {
                SortError::SortMismatch { subterm: e.to_string(), expected, found }
            }
            SortError::ArityMismatch { symbol, expected, found, .. } => {
                SortError::ArityMismatch { symbol, expected, found, subterm: e.to_string() }
            }
            other => other,
        })?)
    }

    fn prop(&mut self, e: &Sexp) -> Result<Prop, ParseError> {
        match e {
            Sexp::Atom(a) => match a.as_str() {
                "true" => Ok(Prop::Top),
                "false" => Ok(Prop::Bot),
                _ => self.atom(a, None, &[], e),
            },
            Sexp::List(items) => match items.as_slice() {
                [Sexp::Atom(op), rest @ ..] if matches!(op.as_str(), "=>" | "and" | "or") && rest.len() >= 2 => {
                    let parts = rest.iter().map(|p| self.prop(p)).collect::<Result<Vec<_>, _>>()?;
                    let mk = match op.as_str() {
                        "=>" => Prop::imp,
                        "and" => Prop::and,
                        _ => Prop::or,
                    };
                    let mut it = parts.into_iter().rev();
                    let last = it.next().expect("two or more");
                    Ok(it.fold(last, |acc, p| mk(p, acc)))
                }
                [Sexp::Atom(q), decl, body] if q == "forall" || q == "exists" => {
                    let x = parse_var_decl(self.sig, decl)?;
                    self.binders.push((x.name.clone(), x.sort.clone()));
                    let body = self.prop(body);
                    self.binders.pop();
                    let binder = Binder { name: x.name, sort: x.sort };
                    let body = Box::new(body?);
                    Ok(if q == "forall" { Prop::Forall(binder, body) } else { Prop::Exists(binder, body) })
                }
                [Sexp::List(head), args @ ..] if head.first().and_then(Sexp::as_atom) == Some("_") => {
                    match head.as_slice() {
                        [_, Sexp::Atom(p), idx @ ..] => {
                            let indices = self.indices(idx)?;
                            self.atom(p, Some(indices), args, e)
                        }
                        _ => Err(ParseError::malformed("indexed predicate", e)),
                    }
                }
                [Sexp::Atom(p), args @ ..] if !RESERVED.contains(&p.as_str()) => self.atom(p, None, args, e),
                _ => Err(ParseError::malformed("proposition", e)),
            },
        }
    }
}

pub fn parse_term(sig: &Signature, scope: &Scope, e: &Sexp) -> Result<Term, ParseError> {
    Parser { sig, scope, binders: Vec::new() }.term(e)
}

pub fn parse_prop(sig: &Signature, scope: &Scope, e: &Sexp) -> Result<Prop, ParseError> {
    Parser { sig, scope, binders: Vec::new() }.prop(e)
}

pub fn parse_sequent(sig: &Signature, scope: &Scope, e: &Sexp) -> Result<Sequent, ParseError> {
    match e.as_list() {
        Some([Sexp::Atom(h), Sexp::List(ctx), concl]) if h == "seq" => {
            let context = ctx.iter().map(|p| parse_prop(sig, scope, p)).collect::<Result<Vec<_>, _>>()?;
            Ok(Sequent { context: Context(context), conclusion: parse_prop(sig, scope, concl)? })
        }
        _ => Err(ParseError::malformed("sequent", e)),
    }
}

pub fn parse_prop_str(sig: &Signature, scope: &Scope, src: &str) -> Result<Prop, ParseError> {
    parse_prop(sig, scope, &sexp::parse_one(src)?)
}

pub fn parse_term_str(sig: &Signature, scope: &Scope, src: &str) -> Result<Term, ParseError> {
    parse_term(sig, scope, &sexp::parse_one(src)?)
}

/// Either a term or a proposition, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Term(Term),
    Prop(Prop),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => t.fmt(f),
            Expr::Prop(p) => p.fmt(f),
        }
    }
}

impl Expr {
    pub fn map_sorts(&self, s: &crate::lang::SortSubst) -> Expr {
        match self {
            Expr::Term(t) => Expr::Term(t.map_sorts(s)),
            Expr::Prop(p) => Expr::Prop(p.map_sorts(s)),
        }
    }
}

/// Parses a proposition, falling back to a term.
pub fn parse_expr(sig: &Signature, scope: &Scope, e: &Sexp) -> Result<Expr, ParseError> {
    match parse_prop(sig, scope, e) {
        Ok(p) => Ok(Expr::Prop(p)),
        Err(prop_err) => parse_term(sig, scope, e).map(Expr::Term).map_err(|_| prop_err),
    }
}

/// Renders syntax back to s-expressions.
///
/// With a signature, scheme indices that the parser can infer are omitted;
/// without one, indices are printed only on constants.
#[derive(Clone, Copy, Default)]
pub struct Printer<'a> {
    pub sig: Option<&'a Signature>,
}

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Printer { sig: Some(sig) }
    }

    fn indices_implicit(&self, name: &str, is_pred: bool) -> bool {
        match self.sig {
            None => true,
            Some(sig) if is_pred => sig.pred(name).is_none_or(|d| d.indices_inferable()),
            Some(sig) => sig.fun(name).is_none_or(|d| d.indices_inferable()),
        }
    }

    fn head(&self, sym: &Symbol, has_args: bool, is_pred: bool) -> Sexp {
        if sym.indices.is_empty() || (has_args && self.indices_implicit(&sym.name, is_pred)) {
            Sexp::atom(&*sym.name)
        } else {
            let mut v = vec![Sexp::atom("_"), Sexp::atom(&*sym.name)];
            v.extend(sym.indices.iter().map(sort_sexp));
            Sexp::List(v)
        }
    }

    pub fn term(&self, t: &Term) -> Sexp {
        self.term_in(t, &[])
    }

    pub fn expr(&self, e: &Expr) -> Sexp {
        match e {
            Expr::Term(t) => self.term(t),
            Expr::Prop(p) => self.prop(p),
        }
    }

    fn term_in(&self, t: &Term, names: &[Arc<str>]) -> Sexp {
        match t {
            Term::Var(v) => Sexp::atom(&*v.name),
            Term::Bound(k, _) => match names.len().checked_sub(*k as usize + 1) {
                Some(i) => Sexp::atom(&*names[i]),
                None => Sexp::atom(format!("#{k}")),
            },
            Term::App(f, args, _) => {
                let head = self.head(f, !args.is_empty(), false);
                if args.is_empty() {
                    head
                } else {
                    let mut v = vec![head];
                    v.extend(args.iter().map(|a| self.term_in(a, names)));
                    Sexp::List(v)
                }
            }
        }
    }

    pub fn prop(&self, p: &Prop) -> Sexp {
        // Binder hints may be reused; free names and symbols may not.
        let mut reserved = BTreeSet::new();
        collect_reserved(p, &mut reserved);
        self.prop_in(p, &mut Vec::new(), &reserved)
    }

    fn prop_in(&self, p: &Prop, names: &mut Vec<Arc<str>>, reserved: &BTreeSet<Arc<str>>) -> Sexp {
        match p {
            Prop::Atom(sym, args) => {
                let head = self.head(sym, !args.is_empty(), true);
                if args.is_empty() {
                    head
                } else {
                    let mut v = vec![head];
                    v.extend(args.iter().map(|a| self.term_in(a, names)));
                    Sexp::List(v)
                }
            }
            Prop::Top => Sexp::atom("true"),
            Prop::Bot => Sexp::atom("false"),
            Prop::Imp(a, b) => self.binary("=>", a, b, names, reserved),
            Prop::And(a, b) => self.binary("and", a, b, names, reserved),
            Prop::Or(a, b) => self.binary("or", a, b, names, reserved),
            Prop::Forall(x, body) | Prop::Exists(x, body) => {
                let q = if matches!(p, Prop::Forall(..)) { "forall" } else { "exists" };
                let mut name = x.name.to_string();
                while reserved.contains(name.as_str())
                    || names.iter().any(|n| **n == *name)
                    || RESERVED.contains(&name.as_str())
                {
                    name.push('\'');
                }
                let name: Arc<str> = Arc::from(name);
                names.push(name.clone());
                let body = self.prop_in(body, names, reserved);
                names.pop();
                Sexp::list([
                    Sexp::atom(q),
                    Sexp::list([Sexp::atom(&*name), sort_sexp(&x.sort)]),
                    body,
                ])
            }
        }
    }

    fn binary(&self, op: &str, a: &Prop, b: &Prop, names: &mut Vec<Arc<str>>, reserved: &BTreeSet<Arc<str>>) -> Sexp {
        Sexp::list([Sexp::atom(op), self.prop_in(a, names, reserved), self.prop_in(b, names, reserved)])
    }

    pub fn sequent(&self, s: &Sequent) -> Sexp {
        Sexp::list([
            Sexp::atom("seq"),
            Sexp::List(s.context.iter().map(|p| self.prop(p)).collect()),
            self.prop(&s.conclusion),
        ])
    }
}

fn collect_reserved(p: &Prop, out: &mut BTreeSet<Arc<str>>) {
    fn term(t: &Term, out: &mut BTreeSet<Arc<str>>) {
        match t {
            Term::Var(v) => {
                out.insert(v.name.clone());
            }
            Term::Bound(..) => {}
            Term::App(f, args, _) => {
                out.insert(f.name.clone());
                args.iter().for_each(|a| term(a, out));
            }
        }
    }
    match p {
        Prop::Atom(s, args) => {
            out.insert(s.name.clone());
            args.iter().for_each(|a| term(a, out));
        }
        Prop::Top | Prop::Bot => {}
        Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            collect_reserved(a, out);
            collect_reserved(b, out);
        }
        Prop::Forall(_, b) | Prop::Exists(_, b) => collect_reserved(b, out),
    }
}

pub fn sort_sexp(s: &Sort) -> Sexp {
    match s {
        Sort::Base(n) => Sexp::atom(&**n),
        Sort::Arrow(..) => {
            let mut v = vec![Sexp::atom("->")];
            let mut cur = s;
            while let Sort::Arrow(a, b) = cur {
                v.push(sort_sexp(a));
                cur = b;
            }
            v.push(sort_sexp(cur));
            Sexp::List(v)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Printer::default().term(self))
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Printer::default().prop(self))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Printer::default().sequent(self))
    }
}
