use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::error::SortError;
use super::sort::{Sort, SortSubst};

/// Rank of a function symbol or symbol scheme. `params` is empty for plain
/// symbols; otherwise the base sorts it names are placeholders filled by the
/// symbol's sort indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunDecl {
    pub params: Vec<Arc<str>>,
    pub args: Vec<Sort>,
    pub result: Sort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredDecl {
    pub params: Vec<Arc<str>>,
    pub args: Vec<Sort>,
}

/// Instantiated rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    pub args: Vec<Sort>,
    pub result: Option<Sort>,
}

fn params_cover(params: &[Arc<str>], args: &[Sort]) -> bool {
    params.iter().all(|p| args.iter().any(|a| a.mentions(p)))
}

impl FunDecl {
    pub fn instantiate(&self, indices: &[Sort]) -> Option<Rank> {
        if indices.len() != self.params.len() {
            return None;
        }
        let s: SortSubst = self.params.iter().cloned().zip(indices.iter().cloned()).collect();
        Some(Rank {
            args: self.args.iter().map(|a| a.subst(&s)).collect(),
            result: Some(self.result.subst(&s)),
        })
    }

    /// Whether the sort indices can be read off the argument sorts.
    pub fn indices_inferable(&self) -> bool {
        params_cover(&self.params, &self.args)
    }
}

impl PredDecl {
    pub fn instantiate(&self, indices: &[Sort]) -> Option<Rank> {
        if indices.len() != self.params.len() {
            return None;
        }
        let s: SortSubst = self.params.iter().cloned().zip(indices.iter().cloned()).collect();
        Some(Rank { args: self.args.iter().map(|a| a.subst(&s)).collect(), result: None })
    }

    pub fn indices_inferable(&self) -> bool {
        params_cover(&self.params, &self.args)
    }
}

/// Many-sorted signature with optional symbol schemes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    base_sorts: BTreeSet<Arc<str>>,
    funs: BTreeMap<Arc<str>, FunDecl>,
    preds: BTreeMap<Arc<str>, PredDecl>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sort(&mut self, name: &str) -> Result<(), SortError> {
        self.base_sorts.insert(Arc::from(name));
        Ok(())
    }

    fn check_free_name(&self, name: &str) -> Result<(), SortError> {
        if self.funs.contains_key(name) || self.preds.contains_key(name) {
            return Err(SortError::DuplicateSymbol { symbol: name.to_string() });
        }
        Ok(())
    }

    fn check_sorts_known(&self, params: &[Arc<str>], sorts: &[&Sort]) -> Result<(), SortError> {
        for s in sorts {
            let mut names = Vec::new();
            s.base_names(&mut names);
            for n in names {
                if !self.base_sorts.contains(&n) && !params.contains(&n) {
                    return Err(SortError::UnknownSort { sort: n.to_string() });
                }
            }
        }
        Ok(())
    }

    /// Declares a function symbol (or scheme when `params` is non-empty).
    pub fn add_fun(
        &mut self,
        name: &str,
        params: &[&str],
        args: Vec<Sort>,
        result: Sort,
    ) -> Result<(), SortError> {
        let params: Vec<Arc<str>> = params.iter().map(|p| Arc::from(*p)).collect();
        let decl = FunDecl { params, args, result };
        if self.funs.get(name) == Some(&decl) {
            return Ok(());
        }
        self.check_free_name(name)?;
        let mut all: Vec<&Sort> = decl.args.iter().collect();
        all.push(&decl.result);
        self.check_sorts_known(&decl.params, &all)?;
        self.funs.insert(Arc::from(name), decl);
        Ok(())
    }

    pub fn add_pred(&mut self, name: &str, params: &[&str], args: Vec<Sort>) -> Result<(), SortError> {
        let params: Vec<Arc<str>> = params.iter().map(|p| Arc::from(*p)).collect();
        let decl = PredDecl { params, args };
        if self.preds.get(name) == Some(&decl) {
            return Ok(());
        }
        self.check_free_name(name)?;
        let all: Vec<&Sort> = decl.args.iter().collect();
        self.check_sorts_known(&decl.params, &all)?;
        self.preds.insert(Arc::from(name), decl);
        Ok(())
    }

    pub fn has_sort(&self, name: &str) -> bool {
        self.base_sorts.contains(name)
    }

    pub fn base_sorts(&self) -> impl Iterator<Item = &Arc<str>> {
        self.base_sorts.iter()
    }

    pub fn fun(&self, name: &str) -> Option<&FunDecl> {
        self.funs.get(name)
    }

    pub fn pred(&self, name: &str) -> Option<&PredDecl> {
        self.preds.get(name)
    }

    pub fn funs(&self) -> impl Iterator<Item = (&Arc<str>, &FunDecl)> {
        self.funs.iter()
    }

    pub fn preds(&self) -> impl Iterator<Item = (&Arc<str>, &PredDecl)> {
        self.preds.iter()
    }

    /// Checks that every base sort mentioned by `sort` is declared.
    pub fn check_sort(&self, sort: &Sort) -> Result<(), SortError> {
        self.check_sorts_known(&[], &[sort])
    }

    /// A copy of this signature in which `params` are additional base sorts.
    pub fn with_sort_params(&self, params: &[Arc<str>]) -> Result<Signature, SortError> {
        let mut sig = self.clone();
        for p in params {
            if self.base_sorts.contains(p) {
                return Err(SortError::DuplicateSymbol { symbol: p.to_string() });
            }
            sig.base_sorts.insert(p.clone());
        }
        Ok(sig)
    }
}
