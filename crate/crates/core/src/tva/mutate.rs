use super::algebra::{singleton, FiniteTva};

/// One-entry change to an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    Imp(usize, usize, usize),
    And(usize, usize, usize),
    Or(usize, usize, usize),
    TogglePositive(usize),
    Top(usize),
    Bot(usize),
    Forall(u64, usize),
    Exists(u64, usize),
    DropForall(u64),
    DropExists(u64),
}

impl Mutation {
    pub fn apply(&self, t: &FiniteTva) -> FiniteTva {
        let mut m = t.clone();
        match *self {
            Mutation::Imp(a, b, v) => m.imp[a][b] = v,
            Mutation::And(a, b, v) => m.and[a][b] = v,
            Mutation::Or(a, b, v) => m.or[a][b] = v,
            Mutation::TogglePositive(a) => m.positive ^= singleton(a),
            Mutation::Top(v) => m.top = v,
            Mutation::Bot(v) => m.bot = v,
            Mutation::Forall(s, v) => {
                m.forall.insert(s, v);
            }
            Mutation::Exists(s, v) => {
                m.exists.insert(s, v);
            }
            Mutation::DropForall(s) => {
                m.forall.remove(&s);
            }
            Mutation::DropExists(s) => {
                m.exists.remove(&s);
            }
        }
        m
    }

    pub fn describe(&self, t: &FiniteTva) -> String {
        let n = |i: usize| &t.names[i];
        let s = |x: u64| format!("{{{}}}", t.set_names(x).join(","));
        match *self {
            Mutation::Imp(a, b, v) => format!("imp[{}][{}] := {}", n(a), n(b), n(v)),
            Mutation::And(a, b, v) => format!("and[{}][{}] := {}", n(a), n(b), n(v)),
            Mutation::Or(a, b, v) => format!("or[{}][{}] := {}", n(a), n(b), n(v)),
            Mutation::TogglePositive(a) => format!("toggle {} in positive", n(a)),
            Mutation::Top(v) => format!("top := {}", n(v)),
            Mutation::Bot(v) => format!("bot := {}", n(v)),
            Mutation::Forall(x, v) => format!("forall{} := {}", s(x), n(v)),
            Mutation::Exists(x, v) => format!("exists{} := {}", s(x), n(v)),
            Mutation::DropForall(x) => format!("drop {} from the forall domain", s(x)),
            Mutation::DropExists(x) => format!("drop {} from the exists domain", s(x)),
        }
    }
}

/// Every single-entry mutation of `t` that changes something.
pub fn single_entry_mutations(t: &FiniteTva) -> Vec<Mutation> {
    let n = t.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for v in 0..n {
                if v != t.imp[a][b] {
                    out.push(Mutation::Imp(a, b, v));
                }
                if v != t.and[a][b] {
                    out.push(Mutation::And(a, b, v));
                }
                if v != t.or[a][b] {
                    out.push(Mutation::Or(a, b, v));
                }
            }
        }
    }
    for a in 0..n {
        out.push(Mutation::TogglePositive(a));
        if a != t.top {
            out.push(Mutation::Top(a));
        }
        if a != t.bot {
            out.push(Mutation::Bot(a));
        }
    }
    for (&s, &v) in &t.forall {
        out.extend((0..n).filter(|&w| w != v).map(|w| Mutation::Forall(s, w)));
        out.push(Mutation::DropForall(s));
    }
    for (&s, &v) in &t.exists {
        out.extend((0..n).filter(|&w| w != v).map(|w| Mutation::Exists(s, w)));
        out.push(Mutation::DropExists(s));
    }
    out
}

/// How the single-entry mutations of an algebra affect one condition.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Sensitivity {
    pub condition: u8,
    /// Mutations under which the condition fails.
    pub detected_by: usize,
    /// Mutations under which it is the only failing condition.
    pub isolated_by: usize,
    /// The first isolating mutation, or else the first detecting one.
    pub example: Option<String>,
}

pub fn mutation_sensitivity(t: &FiniteTva) -> Vec<Sensitivity> {
    let mut rows: Vec<Sensitivity> =
        (1..=17).map(|k| Sensitivity { condition: k, detected_by: 0, isolated_by: 0, example: None }).collect();
    for m in single_entry_mutations(t) {
        let failing = super::validate_tva(&m.apply(t)).failing();
        for &k in &failing {
            let row = &mut rows[k as usize - 1];
            row.detected_by += 1;
            if failing.len() == 1 {
                if row.isolated_by == 0 {
                    row.example = Some(m.describe(t));
                }
                row.isolated_by += 1;
            } else if row.example.is_none() {
                row.example = Some(m.describe(t));
            }
        }
    }
    rows
}
