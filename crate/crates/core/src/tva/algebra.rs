use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of truth values, as a bitmask over carrier indices.
pub type Subset = u64;

/// Largest carrier we represent; subsets are 64-bit masks.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TvaError {
    #[error("invalid algebra file: {0}")]
    Json(String),
    #[error("unknown truth value `{0}`")]
    UnknownElement(String),
    #[error("duplicate truth value `{0}`")]
    DuplicateElement(String),
    #[error("{0}")]
    Shape(String),
    #[error("carrier of {0} elements is too large")]
    TooLarge(usize),
}

/// A finite truth values algebra with carrier `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTva {
    pub names: Vec<String>,
    pub positive: Subset,
    pub top: usize,
    pub bot: usize,
    pub imp: Vec<Vec<usize>>,
    pub and: Vec<Vec<usize>>,
    pub or: Vec<Vec<usize>>,
    /// `∀̃` on its domain `𝒜`, the key set.
    pub forall: BTreeMap<Subset, usize>,
    /// `∃̃` on its domain `ℰ`.
    pub exists: BTreeMap<Subset, usize>,
    /// `leq[a][b]` iff `a ⊑ b`.
    pub order: Option<Vec<Vec<bool>>>,
}

pub fn members(s: Subset) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |i| s >> i & 1 == 1)
}

pub fn singleton(a: usize) -> Subset {
    1 << a
}

impl FiniteTva {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// The set of all truth values.
    pub fn carrier(&self) -> Subset {
        if self.size() == 64 {
            u64::MAX
        } else {
            (1u64 << self.size()) - 1
        }
    }

    pub fn is_positive(&self, a: usize) -> bool {
        self.positive >> a & 1 == 1
    }

    /// All subsets of the carrier, in increasing mask order.
    pub fn all_subsets(&self) -> impl Iterator<Item = Subset> {
        assert!(self.size() < 32, "powerset of a carrier of {} elements", self.size());
        0..(1u64 << self.size())
    }

    /// `a ⇒̃ A = { a ⇒̃ e | e ∈ A }`.
    pub fn imp_into(&self, a: usize, set: Subset) -> Subset {
        members(set).fold(0, |acc, e| acc | singleton(self.imp[a][e]))
    }

    /// `E ⇒̃ a = { e ⇒̃ a | e ∈ E }`.
    pub fn imp_from(&self, set: Subset, a: usize) -> Subset {
        members(set).fold(0, |acc, e| acc | singleton(self.imp[e][a]))
    }

    /// Full: `𝒜 = ℰ = ℘(B)`.
    pub fn is_full(&self) -> bool {
        self.size() < 32 && {
            let n = 1usize << self.size();
            self.forall.len() == n && self.exists.len() == n
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> Option<bool> {
        self.order.as_ref().map(|o| o[a][b])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_names(&self, s: Subset) -> Vec<String> {
        members(s).map(|i| self.names[i].clone()).collect()
    }

    /// Checks the structural invariants: square total tables, elements in
    /// range, domains within the carrier.
    pub fn check_shape(&self) -> Result<(), TvaError> {
        let n = self.size();
        if n == 0 {
            return Err(TvaError::Shape("empty carrier".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(TvaError::TooLarge(n));
        }
        let in_range = |x: usize| x < n;
        if !in_range(self.top) || !in_range(self.bot) || self.positive & !self.carrier() != 0 {
            return Err(TvaError::Shape("constant or positive set outside the carrier".into()));
        }
        for (name, t) in [("imp", &self.imp), ("and", &self.and), ("or", &self.or)] {
            if t.len() != n || t.iter().any(|row| row.len() != n || !row.iter().all(|&x| in_range(x))) {
                return Err(TvaError::Shape(format!("table `{name}` is not a total {n}x{n} table")));
            }
        }
        for (name, q) in [("forall", &self.forall), ("exists", &self.exists)] {
            if q.iter().any(|(&s, &v)| s & !self.carrier() != 0 || !in_range(v)) {
                return Err(TvaError::Shape(format!("`{name}` mentions values outside the carrier")));
            }
        }
        if let Some(o) = &self.order {
            if o.len() != n || o.iter().any(|row| row.len() != n) {
                return Err(TvaError::Shape("order is not an n x n relation".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantEntry {
    set: Vec<String>,
    value: String,
}

/// JSON layout of an algebra file. Tables are indexed `table[a][b]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TvaFile {
    elements: Vec<String>,
    positive: Vec<String>,
    top: String,
    bot: String,
    imp: Vec<Vec<String>>,
    and: Vec<Vec<String>>,
    or: Vec<Vec<String>>,
    forall: Vec<QuantEntry>,
    exists: Vec<QuantEntry>,
    /// Pairs `[a, b]` with `a ⊑ b`; the relation is their reflexive-transitive closure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<(String, String)>>,
}

/// Reflexive-transitive closure of `pairs` on `0..n`.
pub fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

pub(crate) fn element_index(names: &[String]) -> Result<BTreeMap<&str, usize>, TvaError> {
    let mut idx = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if idx.insert(n.as_str(), i).is_some() {
            return Err(TvaError::DuplicateElement(n.clone()));
        }
    }
    Ok(idx)
}

impl FiniteTva {
    pub fn from_json(src: &str) -> Result<FiniteTva, TvaError> {
        let f: TvaFile = serde_json::from_str(src).map_err(|e| TvaError::Json(e.to_string()))?;
        Self::from_value(f)
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<FiniteTva, TvaError> {
        let f: TvaFile = serde_json::from_value(v).map_err(|e| TvaError::Json(e.to_string()))?;
        Self::from_value(f)
    }

    fn from_value(f: TvaFile) -> Result<FiniteTva, TvaError> {
        if f.elements.len() > MAX_ELEMENTS {
            return Err(TvaError::TooLarge(f.elements.len()));
        }
        let idx = element_index(&f.elements)?;
        let get = |s: &str| idx.get(s).copied().ok_or_else(|| TvaError::UnknownElement(s.to_string()));
        let set = |xs: &[String]| xs.iter().try_fold(0u64, |acc, x| Ok::<_, TvaError>(acc | singleton(get(x)?)));
        let table = |t: &[Vec<String>]| {
            t.iter().map(|row| row.iter().map(|x| get(x)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()
        };
        let quant = |q: &[QuantEntry]| {
            let mut m = BTreeMap::new();
            for e in q {
                if m.insert(set(&e.set)?, get(&e.value)?).is_some() {
                    return Err(TvaError::Shape(format!("set {:?} listed twice", e.set)));
                }
            }
            Ok(m)
        };
        let order = match &f.order {
            None => None,
            Some(pairs) => {
                let pairs = pairs.iter().map(|(a, b)| Ok((get(a)?, get(b)?))).collect::<Result<Vec<_>, TvaError>>()?;
                Some(closure(f.elements.len(), &pairs))
            }
        };
        let t = FiniteTva {
            positive: set(&f.positive)?,
            top: get(&f.top)?,
            bot: get(&f.bot)?,
            imp: table(&f.imp)?,
            and: table(&f.and)?,
            or: table(&f.or)?,
            forall: quant(&f.forall)?,
            exists: quant(&f.exists)?,
            order,
            names: f.elements,
        };
        t.check_shape()?;
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |i: usize| self.names[i].clone();
        let table = |t: &[Vec<usize>]| t.iter().map(|row| row.iter().map(|&x| name(x)).collect()).collect();
        let quant = |q: &BTreeMap<Subset, usize>| {
            q.iter().map(|(&s, &v)| QuantEntry { set: self.set_names(s), value: name(v) }).collect()
        };
        let order = self.order.as_ref().map(|o| {
            let mut pairs = Vec::new();
            for (a, row) in o.iter().enumerate() {
                for (b, &le) in row.iter().enumerate() {
                    if le && a != b {
                        pairs.push((name(a), name(b)));
                    }
                }
            }
            pairs
        });
        let f = TvaFile {
            elements: self.names.clone(),
            positive: self.set_names(self.positive),
            top: name(self.top),
            bot: name(self.bot),
            imp: table(&self.imp),
            and: table(&self.and),
            or: table(&self.or),
            forall: quant(&self.forall),
            exists: quant(&self.exists),
            order,
        };
        serde_json::to_value(f).expect("plain data")
    }
}
