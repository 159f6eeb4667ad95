use super::error::SortError;
use super::signature::{Rank, Signature};
use super::sort::{Sort, SortSubst};
use super::syntax::{Prop, Symbol, Term};

fn fun_rank(sig: &Signature, sym: &Symbol, subterm: &dyn Fn() -> String) -> Result<Rank, SortError> {
    let decl = sig
        .fun(&sym.name)
        .ok_or_else(|| SortError::UnknownSymbol { symbol: sym.name.to_string(), subterm: subterm() })?;
    for s in &sym.indices {
        sig.check_sort(s)?;
    }
    decl.instantiate(&sym.indices).ok_or_else(|| SortError::ArityMismatch {
        symbol: format!("{} (sort indices)", sym.name),
        expected: decl.params.len(),
        found: sym.indices.len(),
        subterm: subterm(),
    })
}

fn pred_rank(sig: &Signature, sym: &Symbol, subterm: &dyn Fn() -> String) -> Result<Rank, SortError> {
    let decl = sig
        .pred(&sym.name)
        .ok_or_else(|| SortError::UnknownSymbol { symbol: sym.name.to_string(), subterm: subterm() })?;
    for s in &sym.indices {
        sig.check_sort(s)?;
    }
    decl.instantiate(&sym.indices).ok_or_else(|| SortError::ArityMismatch {
        symbol: format!("{} (sort indices)", sym.name),
        expected: decl.params.len(),
        found: sym.indices.len(),
        subterm: subterm(),
    })
}

fn check_args(
    sym: &Symbol,
    rank: &Rank,
    args: &[Term],
    sorts: &[Sort],
    subterm: &dyn Fn() -> String,
) -> Result<(), SortError> {
    if rank.args.len() != args.len() {
        return Err(SortError::ArityMismatch {
            symbol: sym.name.to_string(),
            expected: rank.args.len(),
            found: args.len(),
            subterm: subterm(),
        });
    }
    for ((expected, found), arg) in rank.args.iter().zip(sorts).zip(args) {
        if expected != found {
            return Err(SortError::SortMismatch {
                subterm: format!("argument {arg} of {}", subterm()),
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
    Ok(())
}

/// Computes the sort of `t`, checking every application against the signature.
pub fn well_sorted(sig: &Signature, t: &Term) -> Result<Sort, SortError> {
    sort_in(sig, t, &[])
}

fn sort_in(sig: &Signature, t: &Term, env: &[Sort]) -> Result<Sort, SortError> {
    match t {
        Term::Var(v) => {
            sig.check_sort(&v.sort)?;
            Ok(v.sort.clone())
        }
        Term::Bound(k, s) => {
            sig.check_sort(s)?;
            if let Some(bound) = env.len().checked_sub(*k as usize + 1).map(|i| &env[i]) {
                if bound != s {
                    return Err(SortError::SortMismatch {
                        subterm: format!("bound variable #{k}"),
                        expected: bound.to_string(),
                        found: s.to_string(),
                    });
                }
            }
            Ok(s.clone())
        }
        Term::App(sym, args, cached) => {
            let subterm = || t.to_string();
            let rank = fun_rank(sig, sym, &subterm)?;
            let sorts = args.iter().map(|a| sort_in(sig, a, env)).collect::<Result<Vec<_>, _>>()?;
            check_args(sym, &rank, args, &sorts, &subterm)?;
            let result = rank.result.expect("function rank has a result");
            if &result != cached {
                return Err(SortError::SortMismatch {
                    subterm: subterm(),
                    expected: result.to_string(),
                    found: cached.to_string(),
                });
            }
            Ok(result)
        }
    }
}

/// Checks that every atom of `p` is well-sorted and bound variables agree with their binders.
pub fn check_prop(sig: &Signature, p: &Prop) -> Result<(), SortError> {
    fn go(sig: &Signature, p: &Prop, env: &mut Vec<Sort>) -> Result<(), SortError> {
        match p {
            Prop::Atom(sym, args) => {
                let subterm = || p.to_string();
                let rank = pred_rank(sig, sym, &subterm)?;
                let sorts = args.iter().map(|a| sort_in(sig, a, env)).collect::<Result<Vec<_>, _>>()?;
                check_args(sym, &rank, args, &sorts, &subterm)
            }
            Prop::Top | Prop::Bot => Ok(()),
            Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
                go(sig, a, env)?;
                go(sig, b, env)
            }
            Prop::Forall(x, b) | Prop::Exists(x, b) => {
                sig.check_sort(&x.sort)?;
                env.push(x.sort.clone());
                let r = go(sig, b, env);
                env.pop();
                r
            }
        }
    }
    go(sig, p, &mut Vec::new())
}

fn infer_indices(
    params: &[std::sync::Arc<str>],
    templates: &[Sort],
    args: &[Term],
) -> Option<Vec<Sort>> {
    if templates.len() != args.len() {
        return None;
    }
    let mut s = SortSubst::new();
    for (tpl, a) in templates.iter().zip(args) {
        if !tpl.match_into(a.sort(), params, &mut s) {
            return None;
        }
    }
    params.iter().map(|p| s.get(p).cloned()).collect()
}

impl Signature {
    /// Builds a checked application. Empty `indices` on a scheme symbol are
    /// inferred from the argument sorts when possible.
    pub fn mk_app(&self, name: &str, indices: Vec<Sort>, args: Vec<Term>) -> Result<Term, SortError> {
        let decl = self.fun(name).ok_or_else(|| SortError::UnknownSymbol {
            symbol: name.to_string(),
            subterm: name.to_string(),
        })?;
        let indices = if indices.is_empty() && !decl.params.is_empty() {
            infer_indices(&decl.params, &decl.args, &args).ok_or_else(|| SortError::SortMismatch {
                subterm: format!("application of `{name}`"),
                expected: format!("arguments matching {:?}", decl.args),
                found: format!("{:?}", args.iter().map(|a| a.sort().clone()).collect::<Vec<_>>()),
            })?
        } else {
            indices
        };
        let sym = Symbol { name: std::sync::Arc::from(name), indices };
        let subterm = || format!("({} ...)", name);
        let rank = fun_rank(self, &sym, &subterm)?;
        let sorts: Vec<Sort> = args.iter().map(|a| a.sort().clone()).collect();
        check_args(&sym, &rank, &args, &sorts, &subterm)?;
        Ok(Term::App(sym, args, rank.result.expect("function rank")))
    }

    pub fn mk_atom(&self, name: &str, indices: Vec<Sort>, args: Vec<Term>) -> Result<Prop, SortError> {
        let decl = self.pred(name).ok_or_else(|| SortError::UnknownSymbol {
            symbol: name.to_string(),
            subterm: name.to_string(),
        })?;
        let indices = if indices.is_empty() && !decl.params.is_empty() {
            infer_indices(&decl.params, &decl.args, &args).ok_or_else(|| SortError::SortMismatch {
                subterm: format!("atom `{name}`"),
                expected: format!("arguments matching {:?}", decl.args),
                found: format!("{:?}", args.iter().map(|a| a.sort().clone()).collect::<Vec<_>>()),
            })?
        } else {
            indices
        };
        let sym = Symbol { name: std::sync::Arc::from(name), indices };
        let subterm = || format!("({} ...)", name);
        let rank = pred_rank(self, &sym, &subterm)?;
        let sorts: Vec<Sort> = args.iter().map(|a| a.sort().clone()).collect();
        check_args(&sym, &rank, &args, &sorts, &subterm)?;
        Ok(Prop::Atom(sym, args))
    }
}
