use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use thiserror::Error;

use crate::lang::Sort;
use crate::tva::{FiniteTva, TvaError};

/// Default bound on the size of an enumerated domain.
pub const DEFAULT_DOMAIN_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("no interpretation for `{0}`")]
    UnknownSymbol(String),
    #[error("no domain for sort `{0}`")]
    UnknownSort(String),
    #[error("`{symbol}` has no value at ({args})")]
    MissingEntry { symbol: String, args: String },
    #[error("domain of sort `{sort}` has {size} elements, over the cap of {cap}")]
    DomainTooLarge { sort: String, size: String, cap: usize },
    #[error("unknown element `{name}` of sort `{sort}`")]
    UnknownElement { sort: String, name: String },
    #[error("`{0}` is applied but is not a function")]
    NotAFunction(String),
    #[error("quantifier undefined on {0}")]
    Undefined(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error(transparent)]
    Tva(#[from] TvaError),
}

/// Connectives reified as functions on truth values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conn {
    Imp,
    And,
    Or,
}

/// Built-in interpretations used by the simple type theory model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `a ↦ (b ↦ a)`.
    K,
    /// `a ↦ (b ↦ (c ↦ a(c)(b(c))))`.
    S,
    /// `(a, b) ↦ a(b)`.
    App,
    Top,
    Bot,
    Conn(Conn),
    /// `a ↦ ∀̃(Range a)`, indexed by the domain sort.
    All,
    /// `a ↦ ∃̃(Range a)`.
    Ex,
    /// The identity on truth values, as a predicate.
    Eps,
}

/// A semantic value. Functions are kept symbolic and compared extensionally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    /// Element of a base domain, or a truth value for the sort of truth values.
    Elem(usize),
    Fun(Rc<Fun>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fun {
    /// Graph over the enumeration of `arg`.
    Table { arg: Sort, entries: Vec<Value> },
    K0,
    K1(Value),
    S0,
    S1(Value),
    S2(Value, Value),
    Conn0(Conn),
    Conn1(Conn, Value),
    Quant { forall: bool, arg: Sort },
}

impl Value {
    pub fn fun(f: Fun) -> Value {
        Value::Fun(Rc::new(f))
    }

    pub fn as_elem(&self) -> Option<usize> {
        match self {
            Value::Elem(i) => Some(*i),
            Value::Fun(_) => None,
        }
    }
}

/// Interpretation of a function or predicate symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interp {
    /// Total table from argument element indices to an element (or truth value).
    Table(BTreeMap<Vec<usize>, usize>),
    Builtin(Builtin),
}

/// A finite structure for a signature, valued in a finite algebra.
#[derive(Debug, Clone)]
pub struct FiniteStructure {
    pub tva: FiniteTva,
    /// Element names of each base sort.
    pub domains: BTreeMap<Arc<str>, Vec<String>>,
    pub funs: BTreeMap<Arc<str>, Interp>,
    pub preds: BTreeMap<Arc<str>, Interp>,
    /// Base sort whose domain is the set of truth values, if any.
    pub truth_sort: Option<Arc<str>>,
    /// Sort parameters of rule schemes range over sorts up to this depth.
    pub sort_depth: usize,
    pub domain_cap: usize,
    cache: RefCell<HashMap<Sort, Rc<Vec<Value>>>>,
}

impl FiniteStructure {
    pub fn new(tva: FiniteTva, domains: BTreeMap<Arc<str>, Vec<String>>) -> Self {
        FiniteStructure {
            tva,
            domains,
            funs: BTreeMap::new(),
            preds: BTreeMap::new(),
            truth_sort: None,
            sort_depth: 1,
            domain_cap: DEFAULT_DOMAIN_CAP,
            cache: RefCell::new(HashMap::new()),
        }
    }

    /// Number of elements of `sort`, saturating.
    pub fn domain_size(&self, sort: &Sort) -> Result<u128, ModelError> {
        match sort {
            Sort::Base(b) => {
                self.domains.get(b).map(|d| d.len() as u128).ok_or_else(|| ModelError::UnknownSort(b.to_string()))
            }
            Sort::Arrow(t, u) => {
                let (n, m) = (self.domain_size(t)?, self.domain_size(u)?);
                if m <= 1 {
                    return Ok(if n == 0 { 1 } else { m });
                }
                let mut size: u128 = 1;
                for _ in 0..n {
                    size = size.saturating_mul(m);
                    if size > u64::MAX as u128 {
                        break;
                    }
                }
                Ok(size)
            }
        }
    }

    /// Enumerates the domain of `sort`. Function sorts hold all functions.
    pub fn domain(&self, sort: &Sort) -> Result<Rc<Vec<Value>>, ModelError> {
        if let Some(d) = self.cache.borrow().get(sort) {
            return Ok(d.clone());
        }
        let size = self.domain_size(sort)?;
        if size > self.domain_cap as u128 {
            let shown = if size > u64::MAX as u128 { "too many".to_string() } else { size.to_string() };
            return Err(ModelError::DomainTooLarge { sort: sort.to_string(), size: shown, cap: self.domain_cap });
        }
        let values: Vec<Value> = match sort {
            Sort::Base(_) => (0..size as usize).map(Value::Elem).collect(),
            Sort::Arrow(t, u) => {
                let (args, results) = (self.domain(t)?, self.domain(u)?);
                let m = results.len();
                (0..size as usize)
                    .map(|mut k| {
                        let entries = (0..args.len())
                            .map(|_| {
                                let v = results[k % m].clone();
                                k /= m;
                                v
                            })
                            .collect();
                        Value::fun(Fun::Table { arg: (**t).clone(), entries })
                    })
                    .collect()
            }
        };
        let values = Rc::new(values);
        self.cache.borrow_mut().insert(sort.clone(), values.clone());
        Ok(values)
    }

    /// Position of `v` in the enumeration of `sort`.
    pub fn index_of(&self, v: &Value, sort: &Sort) -> Result<usize, ModelError> {
        match (v, sort) {
            (Value::Elem(i), Sort::Base(_)) => Ok(*i),
            (_, Sort::Arrow(t, u)) => {
                let m = self.domain(u)?.len();
                let mut idx = 0usize;
                if let Value::Fun(f) = v {
                    if let Fun::Table { arg, entries } = &**f {
                        if **t == *arg {
                            for e in entries.iter().rev() {
                                idx = idx * m + self.index_of(e, u)?;
                            }
                            return Ok(idx);
                        }
                    }
                }
                let args = self.domain(t)?;
                for a in args.iter().rev() {
                    idx = idx * m + self.index_of(&self.apply(v, a)?, u)?;
                }
                Ok(idx)
            }
            (Value::Fun(_), Sort::Base(b)) => Err(ModelError::Invalid(format!("function value at base sort `{b}`"))),
        }
    }

    /// Extensional equality at `sort`.
    pub fn value_eq(&self, v: &Value, w: &Value, sort: &Sort) -> Result<bool, ModelError> {
        match sort {
            Sort::Base(_) => Ok(v == w),
            Sort::Arrow(t, u) => {
                if v == w {
                    return Ok(true);
                }
                for a in self.domain(t)?.iter() {
                    if !self.value_eq(&self.apply(v, a)?, &self.apply(w, a)?, u)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn apply(&self, f: &Value, a: &Value) -> Result<Value, ModelError> {
        let Value::Fun(f) = f else { return Err(ModelError::NotAFunction(format!("{f:?}"))) };
        let t = &self.tva;
        Ok(match &**f {
            Fun::Table { arg, entries } => entries[self.index_of(a, arg)?].clone(),
            Fun::K0 => Value::fun(Fun::K1(a.clone())),
            Fun::K1(x) => x.clone(),
            Fun::S0 => Value::fun(Fun::S1(a.clone())),
            Fun::S1(x) => Value::fun(Fun::S2(x.clone(), a.clone())),
            Fun::S2(x, y) => {
                let xc = self.apply(x, a)?;
                let yc = self.apply(y, a)?;
                self.apply(&xc, &yc)?
            }
            Fun::Conn0(c) => Value::fun(Fun::Conn1(*c, a.clone())),
            Fun::Conn1(c, x) => {
                let (x, y) = (self.truth(x)?, self.truth(a)?);
                Value::Elem(match c {
                    Conn::Imp => t.imp[x][y],
                    Conn::And => t.and[x][y],
                    Conn::Or => t.or[x][y],
                })
            }
            Fun::Quant { forall, arg } => {
                let mut range = 0u64;
                for d in self.domain(arg)?.iter() {
                    range |= 1 << self.truth(&self.apply(a, d)?)?;
                }
                let map = if *forall { &t.forall } else { &t.exists };
                match map.get(&range) {
                    Some(&v) => Value::Elem(v),
                    None => return Err(ModelError::Undefined(format!("{{{}}}", t.set_names(range).join(",")))),
                }
            }
        })
    }

    fn truth(&self, v: &Value) -> Result<usize, ModelError> {
        v.as_elem().filter(|&i| i < self.tva.size()).ok_or_else(|| ModelError::Invalid(format!("{v:?} is not a truth value")))
    }

    /// Human-readable value: an element name, or a small function graph.
    pub fn show(&self, v: &Value, sort: &Sort) -> String {
        match (v, sort) {
            (Value::Elem(i), Sort::Base(b)) => {
                self.domains.get(b).and_then(|d| d.get(*i)).cloned().unwrap_or_else(|| format!("#{i}"))
            }
            (_, Sort::Arrow(t, u)) => match self.domain(t) {
                Ok(args) if args.len() <= 8 => {
                    let pairs: Result<Vec<String>, ModelError> = args
                        .iter()
                        .map(|a| Ok(format!("{} -> {}", self.show(a, t), self.show(&self.apply(v, a)?, u))))
                        .collect();
                    pairs.map(|p| format!("{{{}}}", p.join(", "))).unwrap_or_else(|_| "<function>".into())
                }
                _ => "<function>".into(),
            },
            _ => format!("{v:?}"),
        }
    }
}
