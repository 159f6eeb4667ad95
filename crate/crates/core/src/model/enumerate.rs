//! Exhaustive enumeration of small table structures.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::structure::{FiniteStructure, Interp, ModelError};
use crate::lang::{Signature, Sort};
use crate::tva::FiniteTva;

/// Upper bound on the number of structures [`all_structures`] will produce.
pub const MAX_STRUCTURES: u128 = 1 << 20;

struct Slot {
    symbol: Arc<str>,
    is_pred: bool,
    key: Vec<usize>,
    range: usize,
}

fn keys(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out.into_iter().flat_map(|k| (0..n).map(move |i| [k.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Every structure for `sig` over `tva` whose base sort `b` has
/// `domain_size` elements named `d0`, `d1`, ... Symbols with sort
/// parameters or higher-order arguments are rejected.
pub fn all_structures(sig: &Signature, tva: &FiniteTva, domain_size: usize) -> Result<Vec<FiniteStructure>, ModelError> {
    let domains: BTreeMap<Arc<str>, Vec<String>> =
        sig.base_sorts().map(|b| (b.clone(), (0..domain_size).map(|i| format!("d{i}")).collect())).collect();
    let size_of = |s: &Sort| match s {
        Sort::Base(_) => Ok(domain_size),
        Sort::Arrow(..) => Err(ModelError::Invalid(format!("cannot enumerate tables over {s}"))),
    };
    let mut slots = Vec::new();
    let decls = sig
        .funs()
        .map(|(n, d)| (n, &d.params, &d.args, Some(&d.result)))
        .chain(sig.preds().map(|(n, d)| (n, &d.params, &d.args, None)));
    for (name, params, args, result) in decls {
        if !params.is_empty() {
            return Err(ModelError::Invalid(format!("scheme `{name}` needs a built-in interpretation")));
        }
        let sizes = args.iter().map(size_of).collect::<Result<Vec<_>, _>>()?;
        let range = match result {
            Some(r) => size_of(r)?,
            None => tva.size(),
        };
        for key in keys(&sizes) {
            slots.push(Slot { symbol: name.clone(), is_pred: result.is_none(), key, range });
        }
    }
    let total = slots.iter().try_fold(1u128, |acc, s| acc.checked_mul(s.range as u128));
    match total {
        Some(n) if n <= MAX_STRUCTURES => {}
        _ => {
            return Err(ModelError::DomainTooLarge {
                sort: "structures".into(),
                size: total.map_or_else(|| "overflow".into(), |n| n.to_string()),
                cap: MAX_STRUCTURES as usize,
            })
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    loop {
        let mut s = FiniteStructure::new(tva.clone(), domains.clone());
        for (slot, &v) in slots.iter().zip(&choice) {
            let map = if slot.is_pred { &mut s.preds } else { &mut s.funs };
            let Interp::Table(t) = map.entry(slot.symbol.clone()).or_insert_with(|| Interp::Table(BTreeMap::new())) else {
                unreachable!("tables only")
            };
            t.insert(slot.key.clone(), v);
        }
        out.push(s);
        // Odometer, first slot fastest.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < slots[i].range {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
