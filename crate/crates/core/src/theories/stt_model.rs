use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::lang::Sort;
use crate::model::{sorts_up_to, Builtin, Conn, FiniteStructure, Interp, DEFAULT_DOMAIN_CAP};
use crate::tva::FiniteTva;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SttModelError {
    #[error("sort depth bound must be at least 1")]
    ZeroDepth,
    #[error("the algebra is not full")]
    NotFull,
    #[error("domain of sort `{sort}` has {size} elements, over the cap of {cap}")]
    DomainTooLarge { sort: String, size: String, cap: usize },
}

/// Largest arrow-nesting depth of the sorts a model is checked at. Base
/// sorts have depth 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SortDepthBound(usize);

impl SortDepthBound {
    pub fn new(depth: usize) -> Result<Self, SttModelError> {
        if depth == 0 {
            return Err(SttModelError::ZeroDepth);
        }
        Ok(SortDepthBound(depth))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// The model of simple type theory over a full algebra: `M_i = {0}`,
/// `M_o` the truth values, `M_(T -> U)` all functions.
pub fn build_stt_model(t: &FiniteTva, bound: SortDepthBound) -> Result<FiniteStructure, SttModelError> {
    build_stt_model_capped(t, bound, DEFAULT_DOMAIN_CAP)
}

/// As [`build_stt_model`], with a given cap on enumerated domains. Every
/// sort below the bound is an argument sort and must fit under the cap.
pub fn build_stt_model_capped(t: &FiniteTva, bound: SortDepthBound, cap: usize) -> Result<FiniteStructure, SttModelError> {
    if !t.is_full() {
        return Err(SttModelError::NotFull);
    }
    let domains = BTreeMap::from([(Arc::from("i"), vec!["0".to_string()]), (Arc::from("o"), t.names.clone())]);
    let mut s = FiniteStructure::new(t.clone(), domains);
    s.domain_cap = cap;
    s.sort_depth = bound.get();
    s.truth_sort = Some(Arc::from("o"));
    let bases: Vec<Arc<str>> = s.domains.keys().cloned().collect();
    for sort in sorts_up_to(&bases, bound.get() - 1).iter().chain(std::iter::once(&Sort::base("o"))) {
        let size = s.domain_size(sort).expect("base sorts have domains");
        if size > cap as u128 {
            let size = if size > u64::MAX as u128 { "too many".into() } else { size.to_string() };
            return Err(SttModelError::DomainTooLarge { sort: sort.to_string(), size, cap });
        }
    }
    let funs = [
        ("K", Builtin::K),
        ("S", Builtin::S),
        ("app", Builtin::App),
        ("dtop", Builtin::Top),
        ("dbot", Builtin::Bot),
        ("dimp", Builtin::Conn(Conn::Imp)),
        ("dand", Builtin::Conn(Conn::And)),
        ("dor", Builtin::Conn(Conn::Or)),
        ("dall", Builtin::All),
        ("dex", Builtin::Ex),
    ];
    for (name, b) in funs {
        s.funs.insert(Arc::from(name), Interp::Builtin(b));
    }
    s.preds.insert(Arc::from("eps"), Interp::Builtin(Builtin::Eps));
    Ok(s)
}
