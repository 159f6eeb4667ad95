use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A sort: a base sort name or an arrow between two sorts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Base(Arc<str>),
    Arrow(Arc<Sort>, Arc<Sort>),
}

/// Assignment of sorts to sort parameters.
pub type SortSubst = BTreeMap<Arc<str>, Sort>;

impl Sort {
    pub fn base(name: &str) -> Sort {
        Sort::Base(Arc::from(name))
    }

    pub fn arrow(from: Sort, to: Sort) -> Sort {
        Sort::Arrow(Arc::new(from), Arc::new(to))
    }

    /// `a1 -> a2 -> ... -> result`, right-associated.
    pub fn arrows(args: &[Sort], result: Sort) -> Sort {
        args.iter().rev().fold(result, |acc, a| Sort::arrow(a.clone(), acc))
    }

    pub fn as_arrow(&self) -> Option<(&Sort, &Sort)> {
        match self {
            Sort::Arrow(a, b) => Some((a, b)),
            Sort::Base(_) => None,
        }
    }

    /// Arrow-nesting depth; base sorts have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Sort::Base(_) => 1,
            Sort::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn base_names(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Sort::Base(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Sort::Arrow(a, b) => {
                a.base_names(out);
                b.base_names(out);
            }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Sort::Base(n) => &**n == name,
            Sort::Arrow(a, b) => a.mentions(name) || b.mentions(name),
        }
    }

    /// Replaces base sorts named in `subst`.
    pub fn subst(&self, subst: &SortSubst) -> Sort {
        if subst.is_empty() {
            return self.clone();
        }
        match self {
            Sort::Base(n) => subst.get(n).cloned().unwrap_or_else(|| self.clone()),
            Sort::Arrow(a, b) => Sort::arrow(a.subst(subst), b.subst(subst)),
        }
    }

    /// First-order matching of `self` (whose base sorts listed in `params` are
    /// metavariables) against `subject`, extending `subst`.
    pub fn match_into(&self, subject: &Sort, params: &[Arc<str>], subst: &mut SortSubst) -> bool {
        match self {
            Sort::Base(n) if params.contains(n) => match subst.get(n) {
                Some(bound) => bound == subject,
                None => {
                    subst.insert(n.clone(), subject.clone());
                    true
                }
            },
            Sort::Base(_) => self == subject,
            Sort::Arrow(a, b) => match subject {
                Sort::Arrow(sa, sb) => {
                    a.match_into(sa, params, subst) && b.match_into(sb, params, subst)
                }
                Sort::Base(_) => false,
            },
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Base(n) => f.write_str(n),
            Sort::Arrow(..) => {
                f.write_str("(->")?;
                let mut cur = self;
                while let Sort::Arrow(a, b) = cur {
                    write!(f, " {a}")?;
                    cur = b;
                }
                write!(f, " {cur})")
            }
        }
    }
}

impl fmt::Debug for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_are_right_associated_and_printed_flat() {
        let (i, o) = (Sort::base("i"), Sort::base("o"));
        let s = Sort::arrows(&[i.clone(), o.clone()], i.clone());
        assert_eq!(s, Sort::arrow(i.clone(), Sort::arrow(o.clone(), i.clone())));
        assert_eq!(s.to_string(), "(-> i o i)");
        let higher = Sort::arrow(Sort::arrow(i.clone(), o.clone()), o.clone());
        assert_eq!(higher.to_string(), "(-> (-> i o) o)");
        assert_eq!(i.depth(), 1);
        assert_eq!(higher.depth(), 3);
    }

    #[test]
    fn matching_binds_parameters_consistently() {
        let params: Vec<Arc<str>> = vec![Arc::from("T"), Arc::from("U")];
        let pat = Sort::arrows(&[Sort::base("T"), Sort::base("U")], Sort::base("T"));
        let (i, o) = (Sort::base("i"), Sort::base("o"));
        let mut s = SortSubst::new();
        assert!(pat.match_into(&Sort::arrows(&[i.clone(), o.clone()], i.clone()), &params, &mut s));
        assert_eq!(s[&Arc::from("T")], i);
        assert_eq!(pat.subst(&s), Sort::arrows(&[i.clone(), o.clone()], i.clone()));
        let mut s = SortSubst::new();
        assert!(!pat.match_into(&Sort::arrows(&[i.clone(), o.clone()], o), &params, &mut s));
    }
}
