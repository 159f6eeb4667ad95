//! Terms and propositions in locally nameless form.
//!
//! Bound variables are de Bruijn indices counted from the innermost enclosing
//! quantifier; free variables are named. Binders keep their source name only
//! as a printing hint, so derived equality is alpha-equivalence.

use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::sort::{Sort, SortSubst};

/// A free variable: a name together with its sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Arc<str>,
    pub sort: Sort,
}

impl Var {
    pub fn new(name: &str, sort: Sort) -> Var {
        Var { name: Arc::from(name), sort }
    }
}

/// A function or predicate symbol, with sort indices when it comes from a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: Arc<str>,
    pub indices: Vec<Sort>,
}

impl Symbol {
    pub fn plain(name: &str) -> Symbol {
        Symbol { name: Arc::from(name), indices: Vec::new() }
    }

    pub fn indexed(name: &str, indices: Vec<Sort>) -> Symbol {
        Symbol { name: Arc::from(name), indices }
    }

    fn map_sorts(&self, s: &SortSubst) -> Symbol {
        Symbol { name: self.name.clone(), indices: self.indices.iter().map(|x| x.subst(s)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    /// De Bruijn index, with the sort of its binder.
    Bound(u32, Sort),
    /// Application; the last field caches the result sort.
    App(Symbol, Vec<Term>, Sort),
}

/// Quantifier binder. The name is a printing hint and is ignored by equality.
#[derive(Debug, Clone)]
pub struct Binder {
    pub name: Arc<str>,
    pub sort: Sort,
}

impl PartialEq for Binder {
    fn eq(&self, other: &Self) -> bool {
        self.sort == other.sort
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sort.hash(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Prop {
    Atom(Symbol, Vec<Term>),
    Top,
    Bot,
    Imp(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Forall(Binder, Box<Prop>),
    Exists(Binder, Box<Prop>),
}

impl Term {
    pub fn var(name: &str, sort: Sort) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn sort(&self) -> &Sort {
        match self {
            Term::Var(v) => &v.sort,
            Term::Bound(_, s) => s,
            Term::App(_, _, s) => s,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::App(_, args, _) => 1 + args.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Bound(..) => {}
            Term::App(_, args, _) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn names_into(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Var(v) => {
                out.insert(v.name.clone());
            }
            Term::Bound(..) => {}
            Term::App(f, args, _) => {
                out.insert(f.name.clone());
                args.iter().for_each(|a| a.names_into(out));
            }
        }
    }

    /// Adds `amount` to every bound index `>= cutoff`.
    pub fn shift(&self, cutoff: u32, amount: u32) -> Term {
        if amount == 0 {
            return self.clone();
        }
        match self {
            Term::Bound(k, s) if *k >= cutoff => Term::Bound(k + amount, s.clone()),
            Term::App(f, args, s) => {
                Term::App(f.clone(), args.iter().map(|a| a.shift(cutoff, amount)).collect(), s.clone())
            }
            _ => self.clone(),
        }
    }

    pub fn is_locally_closed(&self) -> bool {
        self.max_loose(0).is_none()
    }

    fn max_loose(&self, depth: u32) -> Option<u32> {
        match self {
            Term::Bound(k, _) if *k >= depth => Some(*k - depth),
            Term::App(_, args, _) => args.iter().filter_map(|a| a.max_loose(depth)).max(),
            _ => None,
        }
    }

    /// Replaces free variables; the replacement is shifted under `depth` binders.
    pub(crate) fn subst_at(&self, lookup: &dyn Fn(&Var) -> Option<Term>, depth: u32) -> Term {
        match self {
            Term::Var(v) => match lookup(v) {
                Some(t) => t.shift(0, depth),
                None => self.clone(),
            },
            Term::Bound(..) => self.clone(),
            Term::App(f, args, s) => {
                Term::App(f.clone(), args.iter().map(|a| a.subst_at(lookup, depth)).collect(), s.clone())
            }
        }
    }

    pub(crate) fn instantiate_at(&self, depth: u32, with: &Term) -> Term {
        match self {
            Term::Bound(k, _) if *k == depth => with.shift(0, depth),
            Term::Bound(k, s) if *k > depth => Term::Bound(k - 1, s.clone()),
            Term::App(f, args, s) => {
                Term::App(f.clone(), args.iter().map(|a| a.instantiate_at(depth, with)).collect(), s.clone())
            }
            _ => self.clone(),
        }
    }

    pub(crate) fn abstract_at(&self, depth: u32, x: &Var) -> Term {
        match self {
            Term::Var(v) if v == x => Term::Bound(depth, v.sort.clone()),
            Term::Bound(k, s) if *k >= depth => Term::Bound(k + 1, s.clone()),
            Term::App(f, args, s) => {
                Term::App(f.clone(), args.iter().map(|a| a.abstract_at(depth, x)).collect(), s.clone())
            }
            _ => self.clone(),
        }
    }

    pub fn map_sorts(&self, s: &SortSubst) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(v) => Term::Var(Var { name: v.name.clone(), sort: v.sort.subst(s) }),
            Term::Bound(k, so) => Term::Bound(*k, so.subst(s)),
            Term::App(f, args, so) => {
                Term::App(f.map_sorts(s), args.iter().map(|a| a.map_sorts(s)).collect(), so.subst(s))
            }
        }
    }
}

impl Prop {
    pub fn imp(a: Prop, b: Prop) -> Prop {
        Prop::Imp(Box::new(a), Box::new(b))
    }

    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Or(Box::new(a), Box::new(b))
    }

    /// Nullary atom.
    pub fn atom0(name: &str) -> Prop {
        Prop::Atom(Symbol::plain(name), Vec::new())
    }

    pub fn atom(pred: Symbol, args: Vec<Term>) -> Prop {
        Prop::Atom(pred, args)
    }

    /// `forall x. body` where `body` mentions `x` as a free variable.
    pub fn forall(x: &Var, body: &Prop) -> Prop {
        Prop::Forall(Binder { name: x.name.clone(), sort: x.sort.clone() }, Box::new(body.abstract_at(0, x)))
    }

    pub fn exists(x: &Var, body: &Prop) -> Prop {
        Prop::Exists(Binder { name: x.name.clone(), sort: x.sort.clone() }, Box::new(body.abstract_at(0, x)))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Prop::Atom(..))
    }

    pub fn size(&self) -> usize {
        match self {
            Prop::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Prop::Top | Prop::Bot => 1,
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => 1 + a.size() + b.size(),
            Prop::Forall(_, b) | Prop::Exists(_, b) => 1 + b.size(),
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Prop::Atom(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
            Prop::Top | Prop::Bot => {}
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Prop::Forall(_, b) | Prop::Exists(_, b) => b.free_vars_into(out),
        }
    }

    /// Every name occurring in the proposition: free variables, symbols and binder hints.
    pub fn names_into(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Prop::Atom(p, args) => {
                out.insert(p.name.clone());
                args.iter().for_each(|a| a.names_into(out));
            }
            Prop::Top | Prop::Bot => {}
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                a.names_into(out);
                b.names_into(out);
            }
            Prop::Forall(x, b) | Prop::Exists(x, b) => {
                out.insert(x.name.clone());
                b.names_into(out);
            }
        }
    }

    pub fn shift(&self, cutoff: u32, amount: u32) -> Prop {
        if amount == 0 {
            return self.clone();
        }
        self.map_terms(cutoff, &|t, c| t.shift(c, amount))
    }

    pub fn is_locally_closed(&self) -> bool {
        fn go(p: &Prop, depth: u32) -> bool {
            match p {
                Prop::Atom(_, args) => args.iter().all(|a| a.max_loose(depth).is_none()),
                Prop::Top | Prop::Bot => true,
                Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => go(a, depth) && go(b, depth),
                Prop::Forall(_, b) | Prop::Exists(_, b) => go(b, depth + 1),
            }
        }
        go(self, 0)
    }

    /// Applies `f(term, depth)` to every atom argument, where `depth` counts the
    /// binders above it plus the starting depth.
    pub(crate) fn map_terms(&self, depth: u32, f: &dyn Fn(&Term, u32) -> Term) -> Prop {
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.clone(), args.iter().map(|a| f(a, depth)).collect()),
            Prop::Top => Prop::Top,
            Prop::Bot => Prop::Bot,
            Prop::Imp(a, b) => Prop::imp(a.map_terms(depth, f), b.map_terms(depth, f)),
            Prop::And(a, b) => Prop::and(a.map_terms(depth, f), b.map_terms(depth, f)),
            Prop::Or(a, b) => Prop::or(a.map_terms(depth, f), b.map_terms(depth, f)),
            Prop::Forall(x, b) => Prop::Forall(x.clone(), Box::new(b.map_terms(depth + 1, f))),
            Prop::Exists(x, b) => Prop::Exists(x.clone(), Box::new(b.map_terms(depth + 1, f))),
        }
    }

    pub(crate) fn subst_at(&self, lookup: &dyn Fn(&Var) -> Option<Term>, depth: u32) -> Prop {
        self.map_terms(depth, &|t, d| t.subst_at(lookup, d))
    }

    pub(crate) fn abstract_at(&self, depth: u32, x: &Var) -> Prop {
        self.map_terms(depth, &|t, d| t.abstract_at(d, x))
    }

    /// Opens the body of a quantifier with `with` in place of the bound variable.
    pub fn instantiate(&self, with: &Term) -> Prop {
        self.map_terms(0, &|t, d| t.instantiate_at(d, with))
    }

    pub fn map_sorts(&self, s: &SortSubst) -> Prop {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.map_sorts(s), args.iter().map(|a| a.map_sorts(s)).collect()),
            Prop::Top => Prop::Top,
            Prop::Bot => Prop::Bot,
            Prop::Imp(a, b) => Prop::imp(a.map_sorts(s), b.map_sorts(s)),
            Prop::And(a, b) => Prop::and(a.map_sorts(s), b.map_sorts(s)),
            Prop::Or(a, b) => Prop::or(a.map_sorts(s), b.map_sorts(s)),
            Prop::Forall(x, b) => {
                Prop::Forall(Binder { name: x.name.clone(), sort: x.sort.subst(s) }, Box::new(b.map_sorts(s)))
            }
            Prop::Exists(x, b) => {
                Prop::Exists(Binder { name: x.name.clone(), sort: x.sort.subst(s) }, Box::new(b.map_sorts(s)))
            }
        }
    }
}

/// Ordered list of hypotheses. Order and multiplicity are significant.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Context(pub Vec<Prop>);

impl Context {
    pub fn new(props: Vec<Prop>) -> Context {
        Context(props)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Prop> {
        self.0.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Prop> {
        self.0.get(i)
    }

    /// `self, extra`.
    pub fn extended(&self, extra: Prop) -> Context {
        let mut v = self.0.clone();
        v.push(extra);
        Context(v)
    }

    /// Inserts `extra` at position `at`.
    pub fn weaken(&self, at: usize, extra: &[Prop]) -> Context {
        let mut v = self.0[..at].to_vec();
        v.extend_from_slice(extra);
        v.extend_from_slice(&self.0[at..]);
        Context(v)
    }

    /// Removes the hypothesis at `at`.
    pub fn without(&self, at: usize) -> Context {
        let mut v = self.0.clone();
        v.remove(at);
        Context(v)
    }

    /// Drops hypothesis `dup` when it is alpha-equivalent to hypothesis `keep`.
    pub fn contract(&self, keep: usize, dup: usize) -> Option<Context> {
        (keep != dup && self.0.get(keep)? == self.0.get(dup)?).then(|| self.without(dup))
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        self.0.iter().for_each(|p| p.free_vars_into(out));
    }
}

/// `context ⊢ conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Context,
    pub conclusion: Prop,
}

impl Sequent {
    pub fn new(context: Vec<Prop>, conclusion: Prop) -> Sequent {
        Sequent { context: Context(context), conclusion }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.context.free_vars_into(&mut out);
        self.conclusion.free_vars_into(&mut out);
        out
    }

    pub fn names_into(&self, out: &mut BTreeSet<Arc<str>>) {
        self.context.iter().for_each(|p| p.names_into(out));
        self.conclusion.names_into(out);
    }
}

/// A name based on `base` that is not in `taken`: `base`, `base1`, `base2`, ...
pub fn fresh_name(base: &str, taken: &BTreeSet<Arc<str>>) -> Arc<str> {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    let stem = if stem.is_empty() { "v" } else { stem };
    if !taken.contains(base) {
        return Arc::from(base);
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken.contains(n.as_str()))
        .map(Arc::from)
        .expect("unbounded")
}
