use std::collections::BTreeMap;

use super::structure::{Builtin, Conn, FiniteStructure, Fun, Interp, ModelError, Value};
use crate::lang::{Prop, Sequent, Sort, Symbol, Term, Var};

/// Values of free variables.
pub type Assignment = BTreeMap<Var, Value>;

/// Truth value of a proposition; `None` when a quantifier meets a set
/// outside its domain.
pub type Truth = Option<usize>;

fn builtin_constant(s: &FiniteStructure, b: Builtin, sym: &Symbol) -> Result<Value, ModelError> {
    Ok(match b {
        Builtin::K => Value::fun(Fun::K0),
        Builtin::S => Value::fun(Fun::S0),
        Builtin::Top => Value::Elem(s.tva.top),
        Builtin::Bot => Value::Elem(s.tva.bot),
        Builtin::Conn(c) => Value::fun(Fun::Conn0(c)),
        Builtin::All | Builtin::Ex => {
            let arg = sym.indices.first().cloned().ok_or_else(|| ModelError::Invalid(format!("`{}` needs a sort index", sym.name)))?;
            Value::fun(Fun::Quant { forall: b == Builtin::All, arg })
        }
        Builtin::App | Builtin::Eps => return Err(ModelError::Invalid(format!("`{}` used as a constant", sym.name))),
    })
}

fn lookup(table: &BTreeMap<Vec<usize>, usize>, sym: &Symbol, args: &[usize]) -> Result<usize, ModelError> {
    table.get(args).copied().ok_or_else(|| ModelError::MissingEntry {
        symbol: sym.name.to_string(),
        args: args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "),
    })
}

fn term(s: &FiniteStructure, phi: &Assignment, bound: &[Value], t: &Term) -> Result<Value, ModelError> {
    match t {
        Term::Var(v) => phi.get(v).cloned().ok_or_else(|| ModelError::UnboundVariable(v.name.to_string())),
        Term::Bound(k, _) => {
            let i = bound.len().checked_sub(*k as usize + 1).ok_or_else(|| ModelError::Invalid(format!("loose index {k}")))?;
            Ok(bound[i].clone())
        }
        Term::App(sym, args, _) => {
            let interp = s.funs.get(&sym.name).ok_or_else(|| ModelError::UnknownSymbol(sym.name.to_string()))?;
            let vals = args.iter().map(|a| term(s, phi, bound, a)).collect::<Result<Vec<_>, _>>()?;
            match interp {
                Interp::Builtin(Builtin::App) => match vals.as_slice() {
                    [f, a] => s.apply(f, a),
                    _ => Err(ModelError::Invalid("application needs two arguments".into())),
                },
                Interp::Builtin(b) if vals.is_empty() => builtin_constant(s, *b, sym),
                Interp::Builtin(_) => Err(ModelError::Invalid(format!("`{}` takes no arguments", sym.name))),
                Interp::Table(table) => {
                    let idx = vals.iter().zip(args).map(|(v, a)| s.index_of(v, a.sort())).collect::<Result<Vec<_>, _>>()?;
                    Ok(Value::Elem(lookup(table, sym, &idx)?))
                }
            }
        }
    }
}

/// `⟦t⟧φ`.
pub fn denote_term(s: &FiniteStructure, phi: &Assignment, t: &Term) -> Result<Value, ModelError> {
    term(s, phi, &[], t)
}

fn prop(s: &FiniteStructure, phi: &Assignment, bound: &mut Vec<Value>, p: &Prop) -> Result<Truth, ModelError> {
    let t = &s.tva;
    Ok(match p {
        Prop::Top => Some(t.top),
        Prop::Bot => Some(t.bot),
        Prop::Atom(sym, args) => {
            let interp = s.preds.get(&sym.name).ok_or_else(|| ModelError::UnknownSymbol(sym.name.to_string()))?;
            let vals = match args.iter().map(|a| term(s, phi, bound, a)).collect::<Result<Vec<_>, _>>() {
                Ok(v) => v,
                Err(ModelError::Undefined(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            match interp {
                Interp::Builtin(Builtin::Eps) => match vals.as_slice() {
                    [Value::Elem(v)] if *v < t.size() => Some(*v),
                    _ => return Err(ModelError::Invalid(format!("`{}` expects one truth value", sym.name))),
                },
                Interp::Builtin(_) => return Err(ModelError::Invalid(format!("`{}` is not a predicate", sym.name))),
                Interp::Table(table) => {
                    let idx = vals.iter().zip(args).map(|(v, a)| s.index_of(v, a.sort())).collect::<Result<Vec<_>, _>>()?;
                    Some(lookup(table, sym, &idx)?)
                }
            }
        }
        Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => {
            let (Some(x), Some(y)) = (prop(s, phi, bound, a)?, prop(s, phi, bound, b)?) else { return Ok(None) };
            Some(match p {
                Prop::Imp(..) => t.imp[x][y],
                Prop::And(..) => t.and[x][y],
                _ => t.or[x][y],
            })
        }
        Prop::Forall(x, body) | Prop::Exists(x, body) => {
            let mut set = 0u64;
            for d in s.domain(&x.sort)?.iter() {
                bound.push(d.clone());
                let v = prop(s, phi, bound, body);
                bound.pop();
                match v? {
                    Some(v) => set |= 1 << v,
                    None => return Ok(None),
                }
            }
            let map = if matches!(p, Prop::Forall(..)) { &t.forall } else { &t.exists };
            map.get(&set).copied()
        }
    })
}

/// `⟦A⟧φ`.
pub fn denote_prop(s: &FiniteStructure, phi: &Assignment, p: &Prop) -> Result<Truth, ModelError> {
    prop(s, phi, &mut Vec::new(), p)
}

/// `⟦A1 ∧ ... ∧ An ⇒ B⟧φ`, with the empty context denoting `⊤̃`.
pub fn denote_sequent(s: &FiniteStructure, phi: &Assignment, seq: &Sequent) -> Result<Truth, ModelError> {
    let t = &s.tva;
    let mut ctx: Option<usize> = None;
    for a in seq.context.iter() {
        let Some(v) = denote_prop(s, phi, a)? else { return Ok(None) };
        ctx = Some(match ctx {
            None => v,
            Some(c) => t.and[c][v],
        });
    }
    let Some(b) = denote_prop(s, phi, &seq.conclusion)? else { return Ok(None) };
    Ok(Some(t.imp[ctx.unwrap_or(t.top)][b]))
}

/// All assignments of `vars`, or an error when a domain is over the cap or
/// there are more than `max` of them.
pub fn assignments(s: &FiniteStructure, vars: &[Var], max: usize) -> Result<Vec<Assignment>, ModelError> {
    let domains = vars.iter().map(|v| s.domain(&v.sort)).collect::<Result<Vec<_>, _>>()?;
    let total = domains.iter().try_fold(1usize, |acc, d| acc.checked_mul(d.len()));
    match total {
        Some(n) if n <= max => {}
        _ => {
            return Err(ModelError::DomainTooLarge {
                sort: format!("assignments of {} variables", vars.len()),
                size: total.map_or("too many".into(), |n| n.to_string()),
                cap: max,
            })
        }
    }
    let mut out = vec![Assignment::new()];
    for (v, d) in vars.iter().zip(&domains) {
        out = out
            .into_iter()
            .flat_map(|phi| {
                d.iter().map(move |x| {
                    let mut phi = phi.clone();
                    phi.insert(v.clone(), x.clone());
                    phi
                })
            })
            .collect();
    }
    Ok(out)
}

/// Reads `name` as an element of `sort`. Base sorts take element names;
/// enumerable function sorts also accept a position `#k`.
pub fn parse_value(s: &FiniteStructure, sort: &Sort, name: &str) -> Result<Value, ModelError> {
    let unknown = || ModelError::UnknownElement { sort: sort.to_string(), name: name.to_string() };
    if let Some(k) = name.strip_prefix('#') {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return s.domain(sort)?.get(k).cloned().ok_or_else(unknown);
    }
    match sort {
        Sort::Base(b) => {
            let d = s.domains.get(b).ok_or_else(|| ModelError::UnknownSort(b.to_string()))?;
            d.iter().position(|n| n == name).map(Value::Elem).ok_or_else(unknown)
        }
        Sort::Arrow(..) => Err(unknown()),
    }
}

/// Values of the reified connectives, for tests and reports.
pub fn connective(c: Conn) -> Value {
    Value::fun(Fun::Conn0(c))
}
