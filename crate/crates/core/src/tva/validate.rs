use serde::Serialize;

use super::algebra::{members, FiniteTva, Subset};

/// The element and set variables of a counterexample. `set` is `A` for the
/// `∀̃` conditions and `E` for the `∃̃` ones.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub c: Option<usize>,
    pub forall_set: Option<Subset>,
    pub exists_set: Option<Subset>,
}

impl Witness {
    fn ab(a: usize, b: usize) -> Self {
        Witness { a: Some(a), b: Some(b), ..Default::default() }
    }

    fn abc(a: usize, b: usize, c: usize) -> Self {
        Witness { a: Some(a), b: Some(b), c: Some(c), ..Default::default() }
    }

    fn a(a: usize) -> Self {
        Witness { a: Some(a), ..Default::default() }
    }

    /// Names instead of indices, for reports.
    pub fn describe(&self, t: &FiniteTva) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (k, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if let Some(i) = v {
                m.insert(k.into(), t.names[i].clone().into());
            }
        }
        for (k, v) in [("A", self.forall_set), ("E", self.exists_set)] {
            if let Some(s) = v {
                m.insert(k.into(), t.set_names(s).into());
            }
        }
        serde_json::Value::Object(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    /// 1 to 17.
    pub index: u8,
    /// Number of instances checked.
    pub instances: usize,
    /// Number of instances violated.
    pub violations: usize,
    /// Least violating instance, in lexicographic witness order.
    pub witness: Option<Witness>,
}

impl ConditionResult {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub holds: bool,
    /// Element names (or a set of them) showing the failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TvaReport {
    pub conditions: Vec<ConditionResult>,
    pub full: bool,
    /// Present when the algebra carries an order.
    pub order: Option<Vec<Verdict>>,
    pub complete: Option<Verdict>,
}

impl TvaReport {
    /// All 17 conditions hold.
    pub fn is_tva(&self) -> bool {
        self.conditions.iter().all(ConditionResult::holds)
    }

    pub fn failing(&self) -> Vec<u8> {
        self.conditions.iter().filter(|c| !c.holds()).map(|c| c.index).collect()
    }

    /// Conditions, order and completeness all hold.
    pub fn all_hold(&self) -> bool {
        self.is_tva()
            && self.order.iter().flatten().all(|v| v.holds)
            && self.complete.as_ref().is_none_or(|v| v.holds)
    }

    pub fn to_json(&self, t: &FiniteTva) -> serde_json::Value {
        let conditions: Vec<_> = self
            .conditions
            .iter()
            .map(|c| {
                let mut m = serde_json::json!({
                    "condition": c.index,
                    "holds": c.holds(),
                    "instances": c.instances,
                    "violations": c.violations,
                });
                if let Some(w) = &c.witness {
                    m["witness"] = w.describe(t);
                }
                m
            })
            .collect();
        serde_json::json!({
            "tva": self.is_tva(),
            "conditions": conditions,
            "full": self.full,
            "order": self.order,
            "complete": self.complete,
        })
    }
}

/// Counts instances of one condition and remembers the first failure.
struct Tally {
    index: u8,
    instances: usize,
    violations: usize,
    witness: Option<Witness>,
}

impl Tally {
    fn new(index: u8) -> Self {
        Tally { index, instances: 0, violations: 0, witness: None }
    }

    fn check(&mut self, ok: bool, w: impl FnOnce() -> Witness) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            let w = w();
            if self.witness.is_none_or(|old| w < old) {
                self.witness = Some(w);
            }
        }
    }

    fn done(self) -> ConditionResult {
        ConditionResult { index: self.index, instances: self.instances, violations: self.violations, witness: self.witness }
    }
}

/// Checks conditions 1 to 17 by enumeration over the carrier and the
/// quantifier domains, and the order and completeness conditions when an
/// order is present.
pub fn validate_tva(t: &FiniteTva) -> TvaReport {
    let n = t.size();
    let pos = |a: usize| t.is_positive(a);
    let imp = |a: usize, b: usize| t.imp[a][b];
    let mut out = Vec::with_capacity(17);

    let mut c = Tally::new(1);
    for a in 0..n {
        for b in 0..n {
            c.check(!(pos(imp(a, b)) && pos(a)) || pos(b), || Witness::ab(a, b));
        }
    }
    out.push(c.done());

    let mut c = Tally::new(2);
    for a in 0..n {
        for b in 0..n {
            c.check(pos(imp(a, imp(b, a))), || Witness::ab(a, b));
        }
    }
    out.push(c.done());

    let mut c = Tally::new(3);
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let v = imp(imp(a, imp(b, x)), imp(imp(a, b), imp(a, x)));
                c.check(pos(v), || Witness::abc(a, b, x));
            }
        }
    }
    out.push(c.done());

    let mut c = Tally::new(4);
    c.check(pos(t.top), Witness::default);
    out.push(c.done());

    let mut c = Tally::new(5);
    for a in 0..n {
        c.check(pos(imp(t.bot, a)), || Witness::a(a));
    }
    out.push(c.done());

    let mut c = Tally::new(6);
    for a in 0..n {
        for b in 0..n {
            c.check(pos(imp(a, imp(b, t.and[a][b]))), || Witness::ab(a, b));
        }
    }
    out.push(c.done());

    for (k, proj) in [(7u8, 0usize), (8, 1)] {
        let mut c = Tally::new(k);
        for a in 0..n {
            for b in 0..n {
                let target = if proj == 0 { a } else { b };
                c.check(pos(imp(t.and[a][b], target)), || Witness::ab(a, b));
            }
        }
        out.push(c.done());
    }

    for (k, inj) in [(9u8, 0usize), (10, 1)] {
        let mut c = Tally::new(k);
        for a in 0..n {
            for b in 0..n {
                let source = if inj == 0 { a } else { b };
                c.check(pos(imp(source, t.or[a][b])), || Witness::ab(a, b));
            }
        }
        out.push(c.done());
    }

    let mut c = Tally::new(11);
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let v = imp(t.or[a][b], imp(imp(a, x), imp(imp(b, x), x)));
                c.check(pos(v), || Witness::abc(a, b, x));
            }
        }
    }
    out.push(c.done());

    let mut c = Tally::new(12);
    for a in 0..n {
        for &s in t.forall.keys() {
            c.check(t.forall.contains_key(&t.imp_into(a, s)), || Witness { a: Some(a), forall_set: Some(s), ..Default::default() });
        }
        for &s in t.exists.keys() {
            c.check(t.forall.contains_key(&t.imp_from(s, a)), || Witness { a: Some(a), exists_set: Some(s), ..Default::default() });
        }
    }
    out.push(c.done());

    let mut c = Tally::new(13);
    for (&s, &v) in &t.forall {
        c.check(s & !t.positive != 0 || pos(v), || Witness { forall_set: Some(s), ..Default::default() });
    }
    out.push(c.done());

    let mut c = Tally::new(14);
    for a in 0..n {
        for (&s, &all) in &t.forall {
            // Meaningful only when `a ⇒̃ A` is in the domain; condition 12 reports the rest.
            if let Some(&all_imp) = t.forall.get(&t.imp_into(a, s)) {
                c.check(pos(imp(all_imp, imp(a, all))), || Witness { a: Some(a), forall_set: Some(s), ..Default::default() });
            }
        }
    }
    out.push(c.done());

    let mut c = Tally::new(15);
    for (&s, &all) in &t.forall {
        for a in members(s) {
            c.check(pos(imp(all, a)), || Witness { a: Some(a), forall_set: Some(s), ..Default::default() });
        }
    }
    out.push(c.done());

    let mut c = Tally::new(16);
    for (&s, &ex) in &t.exists {
        for a in members(s) {
            c.check(pos(imp(a, ex)), || Witness { a: Some(a), exists_set: Some(s), ..Default::default() });
        }
    }
    out.push(c.done());

    let mut c = Tally::new(17);
    for (&s, &ex) in &t.exists {
        for a in 0..n {
            if let Some(&all_imp) = t.forall.get(&t.imp_from(s, a)) {
                c.check(pos(imp(ex, imp(all_imp, a))), || Witness { a: Some(a), exists_set: Some(s), ..Default::default() });
            }
        }
    }
    out.push(c.done());

    TvaReport {
        conditions: out,
        full: t.is_full(),
        order: t.order.as_ref().map(|_| validate_order(t)),
        complete: t.order.as_ref().map(|_| validate_complete(t)),
    }
}

/// Egli-Milner order on sets: every element of `s` is below some element of
/// `r`, and every element of `r` is above some element of `s`.
pub fn set_leq(leq: &[Vec<bool>], s: Subset, r: Subset) -> bool {
    members(s).all(|x| members(r).any(|y| leq[x][y])) && members(r).all(|y| members(s).any(|x| leq[x][y]))
}

fn names(t: &FiniteTva, xs: &[usize]) -> serde_json::Value {
    xs.iter().map(|&i| t.names[i].clone()).collect::<Vec<_>>().into()
}

/// Verdicts for the order conditions. Without an order the list is empty.
pub fn validate_order(t: &FiniteTva) -> Vec<Verdict> {
    let Some(o) = &t.order else { return Vec::new() };
    let n = t.size();
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let quads = || pairs().flat_map(|(a, b)| pairs().map(move |(c, d)| (a, b, c, d)));
    let mut out = Vec::new();
    let mut verdict = |name: &'static str, bad: Option<Vec<usize>>| {
        out.push(Verdict { name, holds: bad.is_none(), witness: bad.map(|w| names(t, &w)) });
    };

    verdict("reflexive", (0..n).find(|&a| !o[a][a]).map(|a| vec![a]));
    verdict("antisymmetric", pairs().find(|&(a, b)| a != b && o[a][b] && o[b][a]).map(|(a, b)| vec![a, b]));
    verdict(
        "transitive",
        pairs().flat_map(|(a, b)| (0..n).map(move |c| (a, b, c))).find(|&(a, b, c)| o[a][b] && o[b][c] && !o[a][c]).map(|(a, b, c)| vec![a, b, c]),
    );
    verdict("positive-upward-closed", pairs().find(|&(a, b)| t.is_positive(a) && o[a][b] && !t.is_positive(b)).map(|(a, b)| vec![a, b]));
    verdict("top-maximal", (0..n).find(|&a| !o[a][t.top]).map(|a| vec![a]));
    verdict("bot-minimal", (0..n).find(|&a| !o[t.bot][a]).map(|a| vec![a]));
    let mono = |table: &[Vec<usize>]| {
        quads().find(|&(a, b, c, d)| o[a][c] && o[b][d] && !o[table[a][b]][table[c][d]]).map(|(a, b, c, d)| vec![a, b, c, d])
    };
    verdict("and-monotone", mono(&t.and));
    verdict("or-monotone", mono(&t.or));
    // a ⊑ c and b ⊑ d give c ⇒ b ⊑ a ⇒ d.
    verdict(
        "imp-antimonotone-left",
        (0..n).flat_map(|a| pairs().map(move |(c, b)| (a, c, b))).find(|&(a, c, b)| o[a][c] && !o[t.imp[c][b]][t.imp[a][b]]).map(|(a, c, b)| vec![a, c, b]),
    );
    verdict(
        "imp-monotone-right",
        (0..n).flat_map(|b| pairs().map(move |(a, d)| (a, b, d))).find(|&(a, b, d)| o[b][d] && !o[t.imp[a][b]][t.imp[a][d]]).map(|(a, b, d)| vec![a, b, d]),
    );
    for (name, q) in [("forall-monotone", &t.forall), ("exists-monotone", &t.exists)] {
        let mut bad = None;
        'outer: for (&s, &vs) in q {
            for (&r, &vr) in q {
                if set_leq(o, s, r) && !o[vs][vr] {
                    bad = Some(serde_json::json!([t.set_names(s), t.set_names(r)]));
                    break 'outer;
                }
            }
        }
        out.push(Verdict { name, holds: bad.is_none(), witness: bad });
    }
    out
}

/// Greatest lower bound of `s` under `leq`, if there is one.
pub fn glb(leq: &[Vec<bool>], s: Subset) -> Option<usize> {
    let n = leq.len();
    let lower: Vec<usize> = (0..n).filter(|&x| members(s).all(|y| leq[x][y])).collect();
    lower.iter().copied().find(|&g| lower.iter().all(|&x| leq[x][g]))
}

/// Least upper bound of `s` under `leq`, if there is one.
pub fn lub(leq: &[Vec<bool>], s: Subset) -> Option<usize> {
    let n = leq.len();
    let upper: Vec<usize> = (0..n).filter(|&x| members(s).all(|y| leq[y][x])).collect();
    upper.iter().copied().find(|&g| upper.iter().all(|&x| leq[g][x]))
}

/// Every subset of the carrier has a greatest lower bound.
pub fn validate_complete(t: &FiniteTva) -> Verdict {
    let name = "complete";
    let Some(o) = &t.order else { return Verdict { name, holds: false, witness: Some("no order".into()) } };
    let bad = t.all_subsets().find(|&s| glb(o, s).is_none());
    Verdict { name, holds: bad.is_none(), witness: bad.map(|s| t.set_names(s).into()) }
}
