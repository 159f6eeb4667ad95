use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use super::algebra::{closure, element_index, singleton, FiniteTva, TvaError};
use super::validate::{glb, lub};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeytingError {
    #[error("empty carrier")]
    Empty,
    #[error("carrier of {0} elements is too large to enumerate its subsets")]
    TooLarge(usize),
    #[error("`{0}` and `{1}` are distinct but each below the other")]
    NotAntisymmetric(String, String),
    #[error("`{0}` and `{1}` have no meet")]
    NoMeet(String, String),
    #[error("`{0}` and `{1}` have no join")]
    NoJoin(String, String),
    #[error("no greatest `c` with `c ∧ {0} ≤ {1}`")]
    NoArrow(String, String),
    #[error("lattice law fails: {0}")]
    Law(String),
    #[error(transparent)]
    File(#[from] TvaError),
}

/// Largest carrier [`heyting_to_tva`] accepts; the result lists every subset.
pub const MAX_HEYTING: usize = 16;

/// A finite Heyting algebra given by its order, with derived operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHeyting {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub arrow: Vec<Vec<usize>>,
    pub top: usize,
    pub bot: usize,
}

impl FiniteHeyting {
    /// Builds the algebra from generating pairs `a ≤ b`.
    pub fn from_order(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, HeytingError> {
        let n = names.len();
        if n == 0 {
            return Err(HeytingError::Empty);
        }
        let leq = closure(n, pairs);
        let nm = |i: usize| names[i].clone();
        for a in 0..n {
            for b in a + 1..n {
                if leq[a][b] && leq[b][a] {
                    return Err(HeytingError::NotAntisymmetric(nm(a), nm(b)));
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s = singleton(a) | singleton(b);
                meet[a][b] = glb(&leq, s).ok_or_else(|| HeytingError::NoMeet(nm(a), nm(b)))?;
                join[a][b] = lub(&leq, s).ok_or_else(|| HeytingError::NoJoin(nm(a), nm(b)))?;
            }
        }
        let top = glb(&leq, 0).expect("a finite lattice has a top");
        let bot = lub(&leq, 0).expect("a finite lattice has a bottom");
        let mut arrow = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let below = (0..n).filter(|&c| leq[meet[c][a]][b]).fold(0u64, |acc, c| acc | singleton(c));
                let c = lub(&leq, below).filter(|&c| below >> c & 1 == 1);
                arrow[a][b] = c.ok_or_else(|| HeytingError::NoArrow(nm(a), nm(b)))?;
            }
        }
        let h = FiniteHeyting { names, leq, meet, join, arrow, top, bot };
        h.check_laws()?;
        Ok(h)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// Re-checks the lattice and residuation laws on the stored tables.
    pub fn check_laws(&self) -> Result<(), HeytingError> {
        let n = self.size();
        if n == 0 {
            return Err(HeytingError::Empty);
        }
        let (l, m, j, r) = (&self.leq, &self.meet, &self.join, &self.arrow);
        let shape_ok = [l.len(), m.len(), j.len(), r.len()].iter().all(|&k| k == n)
            && l.iter().all(|row| row.len() == n)
            && [m, j, r].iter().all(|t| t.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n)))
            && self.top < n
            && self.bot < n;
        if !shape_ok {
            return Err(HeytingError::Law("tables are not total on the carrier".into()));
        }
        let nm = |i: usize| &self.names[i];
        let law = |s: String| Err(HeytingError::Law(s));
        for a in 0..n {
            if !l[a][a] || !l[a][self.top] || !l[self.bot][a] {
                return law(format!("`{}` breaks reflexivity or the bounds", nm(a)));
            }
            for b in 0..n {
                if a != b && l[a][b] && l[b][a] {
                    return Err(HeytingError::NotAntisymmetric(nm(a).clone(), nm(b).clone()));
                }
                if !(l[m[a][b]][a] && l[m[a][b]][b]) || !(l[a][j[a][b]] && l[b][j[a][b]]) {
                    return law(format!("meet or join of `{}` and `{}` is not a bound", nm(a), nm(b)));
                }
                for c in 0..n {
                    if l[a][b] && l[b][c] && !l[a][c] {
                        return law(format!("order is not transitive at `{}`, `{}`, `{}`", nm(a), nm(b), nm(c)));
                    }
                    if l[c][a] && l[c][b] && !l[c][m[a][b]] {
                        return law(format!("meet of `{}` and `{}` is not greatest", nm(a), nm(b)));
                    }
                    if l[a][c] && l[b][c] && !l[j[a][b]][c] {
                        return law(format!("join of `{}` and `{}` is not least", nm(a), nm(b)));
                    }
                    if l[c][r[a][b]] != l[m[c][a]][b] {
                        return law(format!("residuation fails at c=`{}`, a=`{}`, b=`{}`", nm(c), nm(a), nm(b)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_order(names, &pairs).expect("chains are Heyting algebras")
    }

    /// The one-element algebra, where top and bottom coincide.
    pub fn trivial() -> Self {
        Self::from_order(vec!["0".into()], &[]).expect("trivial algebra")
    }

    /// Componentwise product.
    pub fn product(&self, other: &Self) -> Self {
        let (n, k) = (self.size(), other.size());
        let names = (0..n * k).map(|i| format!("({},{})", self.names[i / k], other.names[i % k])).collect();
        let mut pairs = Vec::new();
        for x in 0..n * k {
            for y in 0..n * k {
                if self.leq[x / k][y / k] && other.leq[x % k][y % k] {
                    pairs.push((x, y));
                }
            }
        }
        Self::from_order(names, &pairs).expect("products of Heyting algebras are Heyting")
    }

    /// Adds a new element above everything.
    pub fn add_top(&self) -> Self {
        self.extend("top", true)
    }

    /// Adds a new element below everything.
    pub fn add_bottom(&self) -> Self {
        self.extend("bot", false)
    }

    fn extend(&self, base: &str, above: bool) -> Self {
        let n = self.size();
        let mut name = base.to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        let mut names = self.names.clone();
        names.push(name);
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.leq[a][b] {
                    pairs.push((a, b));
                }
            }
            pairs.push(if above { (a, n) } else { (n, a) });
        }
        Self::from_order(names, &pairs).expect("adding a bound keeps a Heyting algebra")
    }

    /// Reads `{"elements": [...], "leq": [[a, b], ...]}`, taking the
    /// reflexive-transitive closure of the listed pairs.
    pub fn from_json(src: &str) -> Result<Self, HeytingError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct LatticeFile {
            elements: Vec<String>,
            #[serde(default)]
            leq: Vec<(String, String)>,
        }
        let f: LatticeFile = serde_json::from_str(src).map_err(|e| TvaError::Json(e.to_string()))?;
        let idx = element_index(&f.elements)?;
        let get = |s: &str| idx.get(s).copied().ok_or_else(|| TvaError::UnknownElement(s.to_string()));
        let pairs = f.leq.iter().map(|(a, b)| Ok((get(a)?, get(b)?))).collect::<Result<Vec<_>, TvaError>>()?;
        Self::from_order(f.elements, &pairs)
    }
}

/// The full algebra of a Heyting algebra: `B⁺ = {top}`, `∀̃` the greatest
/// lower bound and `∃̃` the least upper bound of every subset.
pub fn heyting_to_tva(h: &FiniteHeyting) -> Result<FiniteTva, HeytingError> {
    h.check_laws()?;
    let n = h.size();
    if n > MAX_HEYTING {
        return Err(HeytingError::TooLarge(n));
    }
    let mut forall = BTreeMap::new();
    let mut exists = BTreeMap::new();
    for s in 0..(1u64 << n) {
        forall.insert(s, glb(&h.leq, s).expect("finite lattices are complete"));
        exists.insert(s, lub(&h.leq, s).expect("finite lattices are complete"));
    }
    Ok(FiniteTva {
        names: h.names.clone(),
        positive: singleton(h.top),
        top: h.top,
        bot: h.bot,
        imp: h.arrow.clone(),
        and: h.meet.clone(),
        or: h.join.clone(),
        forall,
        exists,
        order: Some(h.leq.clone()),
    })
}

/// The Heyting algebras used as a standard test family: chains of size 2 to
/// 6 and the distributive lattices of size at most 5 that are not chains.
pub fn standard_family() -> Vec<(String, FiniteHeyting)> {
    let mut out: Vec<(String, FiniteHeyting)> = (2..=6).map(|n| (format!("chain{n}"), FiniteHeyting::chain(n))).collect();
    let square = FiniteHeyting::chain(2).product(&FiniteHeyting::chain(2));
    out.push(("trivial".into(), FiniteHeyting::trivial()));
    out.push(("square".into(), square.clone()));
    out.push(("square+top".into(), square.add_top()));
    out.push(("square+bot".into(), square.add_bottom()));
    out
}
