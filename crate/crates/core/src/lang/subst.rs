use std::collections::{BTreeMap, BTreeSet};

use super::error::SortError;
use super::syntax::{Prop, Term, Var};

/// Sort-respecting finite map from variables to locally closed terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: Var, t: Term) -> Result<Self, SortError> {
        let mut s = Self::new();
        s.insert(x, t)?;
        Ok(s)
    }

    pub fn insert(&mut self, x: Var, t: Term) -> Result<(), SortError> {
        if &x.sort != t.sort() {
            return Err(SortError::SortMismatch {
                subterm: x.name.to_string(),
                expected: x.sort.to_string(),
                found: t.sort().to_string(),
            });
        }
        self.map.insert(x, t);
        Ok(())
    }

    pub fn get(&self, x: &Var) -> Option<&Term> {
        self.map.get(x)
    }

    pub fn remove(&mut self, x: &Var) -> Option<Term> {
        self.map.remove(x)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    /// Variables occurring free in the range.
    pub fn range_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.map.values().for_each(|t| t.free_vars_into(&mut out));
        out
    }

    /// The substitution equivalent to applying `inner` first and then `self`.
    pub fn compose(&self, inner: &Substitution) -> Substitution {
        let mut map: BTreeMap<Var, Term> =
            inner.map.iter().map(|(x, t)| (x.clone(), self.apply(t))).collect();
        for (x, t) in &self.map {
            map.entry(x.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }

    pub fn apply<S: Syntax>(&self, s: &S) -> S {
        s.apply_subst(self)
    }
}

/// Operations shared by terms and propositions.
pub trait Syntax: Sized + PartialEq {
    fn free_vars(&self) -> BTreeSet<Var>;

    /// Capture-avoiding substitution. Bound variables are indices, so no
    /// renaming is ever needed; printing picks non-clashing binder names.
    fn apply_subst(&self, sigma: &Substitution) -> Self;

    /// Equality up to the names of bound variables.
    fn alpha_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Syntax for Term {
    fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn apply_subst(&self, sigma: &Substitution) -> Term {
        if sigma.is_empty() {
            return self.clone();
        }
        self.subst_at(&|v| sigma.get(v).cloned(), 0)
    }
}

impl Syntax for Prop {
    fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn apply_subst(&self, sigma: &Substitution) -> Prop {
        if sigma.is_empty() {
            return self.clone();
        }
        self.subst_at(&|v| sigma.get(v).cloned(), 0)
    }
}

pub fn free_vars<S: Syntax>(s: &S) -> BTreeSet<Var> {
    s.free_vars()
}

pub fn apply_subst<S: Syntax>(sigma: &Substitution, s: &S) -> S {
    s.apply_subst(sigma)
}

pub fn alpha_eq<S: Syntax>(a: &S, b: &S) -> bool {
    a.alpha_eq(b)
}
