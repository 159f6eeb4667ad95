//! Structure files.
//!
//! ```json
//! {
//!   "theory": "subset",
//!   "algebra": "bool2",
//!   "domains": {"i": ["a", "b"]},
//!   "functions": {"f": [["a", "b"], ["b", "a"]]},
//!   "predicates": {"mem": [["a", "a", "1"], ["a", "b", "0"], ...]}
//! }
//! ```
//!
//! Each row lists the arguments followed by the value. `algebra` is a
//! bundled algebra name, a path relative to the structure file, or an inline
//! algebra. With `"stt_model": {"depth": 2}` the structure is the simple
//! type theory model over the algebra and the tables are not used.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use super::structure::{FiniteStructure, Interp, ModelError, DEFAULT_DOMAIN_CAP};
use crate::lang::{Signature, Sort};
use crate::theories::{build_stt_model_capped, builtin_by_name, SortDepthBound, TheoryBundle};
use crate::tva::{FiniteTva, BOOL2_SRC, CHAIN3_SRC};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(serde_json::Value),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SttModelSpec {
    pub depth: usize,
    #[serde(default)]
    pub domain_cap: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub theory: String,
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub functions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub predicates: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub stt_model: Option<SttModelSpec>,
}

pub fn bundled_algebra(name: &str) -> Option<FiniteTva> {
    let src = match name {
        "bool2" => BOOL2_SRC,
        "chain3" => CHAIN3_SRC,
        _ => return None,
    };
    Some(FiniteTva::from_json(src).expect("bundled algebra"))
}

fn read(path: &Path) -> Result<String, ModelError> {
    std::fs::read_to_string(path).map_err(|e| ModelError::Invalid(format!("{}: {e}", path.display())))
}

pub fn resolve_algebra(r: &AlgebraRef, base: &Path) -> Result<FiniteTva, ModelError> {
    match r {
        AlgebraRef::Named(name) => match bundled_algebra(name) {
            Some(t) => Ok(t),
            None => Ok(FiniteTva::from_json(&read(&base.join(name))?)?),
        },
        AlgebraRef::Inline(v) => Ok(FiniteTva::from_json_value(v.clone())?),
    }
}

/// A built-in theory name or a theory file path relative to `base`.
pub fn resolve_theory(name: &str, base: &Path) -> Result<TheoryBundle, ModelError> {
    if let Some(t) = builtin_by_name(name) {
        return Ok(t);
    }
    TheoryBundle::parse(&read(&base.join(name))?).map_err(|e| ModelError::Invalid(format!("{name}: {e}")))
}

fn element(domains: &BTreeMap<Arc<str>, Vec<String>>, sort: &Sort, name: &str) -> Result<usize, ModelError> {
    let unknown = || ModelError::UnknownElement { sort: sort.to_string(), name: name.to_string() };
    match sort {
        Sort::Base(b) => domains.get(b).and_then(|d| d.iter().position(|x| x == name)).ok_or_else(unknown),
        Sort::Arrow(..) => Err(ModelError::Invalid(format!("table argument of function sort {sort}"))),
    }
}

fn table(
    domains: &BTreeMap<Arc<str>, Vec<String>>,
    name: &str,
    args: &[Sort],
    result: &Sort,
    rows: &[Vec<String>],
) -> Result<Interp, ModelError> {
    let mut t = BTreeMap::new();
    for row in rows {
        if row.len() != args.len() + 1 {
            return Err(ModelError::Invalid(format!("row of `{name}` has {} entries, expected {}", row.len(), args.len() + 1)));
        }
        let key = args.iter().zip(row).map(|(s, x)| element(domains, s, x)).collect::<Result<Vec<_>, _>>()?;
        let v = element(domains, result, &row[args.len()])?;
        if t.insert(key, v).is_some() {
            return Err(ModelError::Invalid(format!("`{name}` has two rows for ({})", row[..args.len()].join(" "))));
        }
    }
    let expected: usize = args.iter().map(|s| domains.get(base_name(s)).map_or(0, Vec::len)).product();
    if t.len() != expected {
        return Err(ModelError::Invalid(format!("`{name}` is not total: {} of {expected} rows", t.len())));
    }
    Ok(Interp::Table(t))
}

fn base_name(s: &Sort) -> &str {
    match s {
        Sort::Base(b) => b,
        Sort::Arrow(..) => "",
    }
}

const TRUTH: &str = "<truth values>";

/// Builds a table structure for `sig`. Predicate values are names of truth values.
pub fn build_structure(sig: &Signature, f: &StructureFile, tva: FiniteTva) -> Result<FiniteStructure, ModelError> {
    let mut domains: BTreeMap<Arc<str>, Vec<String>> = BTreeMap::new();
    for s in sig.base_sorts() {
        let d = f.domains.get(&**s).ok_or_else(|| ModelError::UnknownSort(s.to_string()))?;
        if d.is_empty() {
            return Err(ModelError::Invalid(format!("domain of `{s}` is empty")));
        }
        domains.insert(s.clone(), d.clone());
    }
    if let Some(extra) = f.domains.keys().find(|k| !sig.has_sort(k)) {
        return Err(ModelError::UnknownSort(extra.clone()));
    }
    let mut with_truth = domains.clone();
    with_truth.insert(Arc::from(TRUTH), tva.names.clone());
    let mut s = FiniteStructure::new(tva, domains);
    for (name, decl) in sig.funs() {
        if !decl.params.is_empty() {
            return Err(ModelError::Invalid(format!("scheme `{name}` needs a built-in interpretation")));
        }
        let rows = f.functions.get(&**name).ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))?;
        s.funs.insert(name.clone(), table(&with_truth, name, &decl.args, &decl.result, rows)?);
    }
    for (name, decl) in sig.preds() {
        if !decl.params.is_empty() {
            return Err(ModelError::Invalid(format!("scheme `{name}` needs a built-in interpretation")));
        }
        let rows = f.predicates.get(&**name).ok_or_else(|| ModelError::UnknownSymbol(name.to_string()))?;
        s.preds.insert(name.clone(), table(&with_truth, name, &decl.args, &Sort::base(TRUTH), rows)?);
    }
    for extra in f.functions.keys().chain(f.predicates.keys()) {
        if sig.fun(extra).is_none() && sig.pred(extra).is_none() {
            return Err(ModelError::UnknownSymbol(extra.clone()));
        }
    }
    Ok(s)
}

/// Parses a structure file and builds it against its theory.
pub fn load_structure(src: &str, base: &Path) -> Result<(TheoryBundle, FiniteStructure), ModelError> {
    let f: StructureFile = serde_json::from_str(src).map_err(|e| ModelError::Invalid(e.to_string()))?;
    let theory = resolve_theory(&f.theory, base)?;
    let tva = resolve_algebra(&f.algebra, base)?;
    let s = match &f.stt_model {
        Some(spec) => {
            let bound = SortDepthBound::new(spec.depth).map_err(|e| ModelError::Invalid(e.to_string()))?;
            let cap = spec.domain_cap.unwrap_or(DEFAULT_DOMAIN_CAP);
            build_stt_model_capped(&tva, bound, cap).map_err(|e| ModelError::Invalid(e.to_string()))?
        }
        None => build_structure(theory.sig(), &f, tva)?,
    };
    Ok((theory, s))
}
