use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::eval::{assignments, denote_prop, denote_sequent, denote_term, Assignment};
use super::structure::{FiniteStructure, ModelError};
use crate::kernel::ProofTree;
use crate::lang::{Expr, Sort, SortSubst, Syntax, Var};
use crate::theories::TheoryBundle;

/// Caps for model checking. Instances beyond them are skipped and listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckLimits {
    pub max_assignments: usize,
}

impl Default for CheckLimits {
    fn default() -> Self {
        CheckLimits { max_assignments: 50_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFailureKind {
    NotPositive,
    Mismatch,
    Undefined,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelFailure {
    pub item: String,
    pub kind: ModelFailureKind,
    /// Sort instance of a rule scheme.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sorts: Vec<String>,
    pub assignment: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub item: String,
    pub sorts: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemSummary {
    pub item: String,
    pub instances: usize,
    pub assignments: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub holds: bool,
    pub scope: &'static str,
    pub axioms: Vec<ItemSummary>,
    pub rules: Vec<ItemSummary>,
    pub failures: Vec<ModelFailure>,
    pub skipped: Vec<Skipped>,
}

pub const MODEL_CHECK_SCOPE: &str =
    "axioms under all assignments; congruence checked on instances of the rewrite rules";

/// All sorts over `bases` of depth at most `depth`, shallowest first.
pub fn sorts_up_to(bases: &[Arc<str>], depth: usize) -> Vec<Sort> {
    let mut out: Vec<Sort> = bases.iter().map(|b| Sort::Base(b.clone())).collect();
    for _ in 1..depth {
        let prev = out.clone();
        for a in &prev {
            for b in &prev {
                let s = Sort::arrow(a.clone(), b.clone());
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.retain(|s| s.depth() <= depth);
    out
}

fn instances(params: &[Arc<str>], universe: &[Sort]) -> Vec<SortSubst> {
    let mut out = vec![SortSubst::new()];
    for p in params {
        out = out
            .into_iter()
            .flat_map(|s| {
                universe.iter().map(move |u| {
                    let mut s = s.clone();
                    s.insert(p.clone(), u.clone());
                    s
                })
            })
            .collect();
    }
    out
}

fn show_assignment(s: &FiniteStructure, phi: &Assignment) -> BTreeMap<String, String> {
    phi.iter().map(|(v, x)| (v.name.to_string(), s.show(x, &v.sort))).collect()
}

fn show_truth(s: &FiniteStructure, v: Option<usize>) -> String {
    v.map_or("undefined".into(), |i| s.tva.names[i].clone())
}

struct Checker<'a> {
    s: &'a FiniteStructure,
    limits: CheckLimits,
    failures: Vec<ModelFailure>,
    skipped: Vec<Skipped>,
}

impl Checker<'_> {
    fn skip(&mut self, item: &str, sorts: &[String], e: ModelError) {
        self.skipped.push(Skipped { item: item.into(), sorts: sorts.to_vec(), reason: e.to_string() });
    }

    fn fail(&mut self, item: &str, kind: ModelFailureKind, sorts: &[String], phi: &Assignment, detail: String) {
        let assignment = show_assignment(self.s, phi);
        self.failures.push(ModelFailure { item: item.into(), kind, sorts: sorts.to_vec(), assignment, detail });
    }

    fn axiom(&mut self, item: String, p: &crate::lang::Prop) -> ItemSummary {
        let vars: Vec<Var> = p.free_vars().into_iter().collect();
        let mut sum = ItemSummary { item: item.clone(), instances: 1, assignments: 0, skipped: 0 };
        let phis = match assignments(self.s, &vars, self.limits.max_assignments) {
            Ok(p) => p,
            Err(e) => {
                sum.skipped = 1;
                self.skip(&item, &[], e);
                return sum;
            }
        };
        for phi in phis {
            sum.assignments += 1;
            match denote_prop(self.s, &phi, p) {
                Ok(Some(v)) if self.s.tva.is_positive(v) => {}
                Ok(v) => {
                    let kind = if v.is_none() { ModelFailureKind::Undefined } else { ModelFailureKind::NotPositive };
                    self.fail(&item, kind, &[], &phi, format!("denotes {}", show_truth(self.s, v)));
                    break;
                }
                Err(e) => {
                    self.fail(&item, ModelFailureKind::Error, &[], &phi, e.to_string());
                    break;
                }
            }
        }
        sum
    }

    /// Compares both sides of one rule instance under every assignment.
    /// `Err` means the instance is too large to enumerate.
    fn rule_instance(&mut self, item: &str, sorts: &[String], vars: &[Var], lhs: &Expr, rhs: &Expr) -> Result<usize, ModelError> {
        let phis = assignments(self.s, vars, self.limits.max_assignments)?;
        if let Expr::Term(l) = lhs {
            // Extensional comparison needs the argument domains of the result sort.
            let mut sort = l.sort();
            while let Some((a, b)) = sort.as_arrow() {
                self.s.domain(a)?;
                sort = b;
            }
        }
        let n = phis.len();
        for phi in phis {
            let outcome = match (lhs, rhs) {
                (Expr::Term(l), Expr::Term(r)) => {
                    match (denote_term(self.s, &phi, l), denote_term(self.s, &phi, r)) {
                        (Ok(a), Ok(b)) => match self.s.value_eq(&a, &b, l.sort()) {
                            Ok(true) => None,
                            Ok(false) => Some((
                                ModelFailureKind::Mismatch,
                                format!("{} vs {}", self.s.show(&a, l.sort()), self.s.show(&b, l.sort())),
                            )),
                            Err(e) => Some((ModelFailureKind::Error, e.to_string())),
                        },
                        (Err(ModelError::Undefined(d)), _) | (_, Err(ModelError::Undefined(d))) => {
                            Some((ModelFailureKind::Undefined, format!("quantifier undefined on {d}")))
                        }
                        (Err(e), _) | (_, Err(e)) => Some((ModelFailureKind::Error, e.to_string())),
                    }
                }
                (Expr::Prop(l), Expr::Prop(r)) => match (denote_prop(self.s, &phi, l), denote_prop(self.s, &phi, r)) {
                    (Ok(Some(a)), Ok(Some(b))) if a == b => None,
                    (Ok(a), Ok(b)) if a.is_none() || b.is_none() => Some((
                        ModelFailureKind::Undefined,
                        format!("{} vs {}", show_truth(self.s, a), show_truth(self.s, b)),
                    )),
                    (Ok(a), Ok(b)) => Some((
                        ModelFailureKind::Mismatch,
                        format!("{} vs {}", show_truth(self.s, a), show_truth(self.s, b)),
                    )),
                    (Err(e), _) | (_, Err(e)) => Some((ModelFailureKind::Error, e.to_string())),
                },
                _ => Some((ModelFailureKind::Error, "rule sides of different kinds".into())),
            };
            if let Some((kind, detail)) = outcome {
                self.fail(item, kind, sorts, &phi, detail);
                break;
            }
        }
        Ok(n)
    }
}

/// Checks that every axiom is positive under all assignments and that both
/// sides of every rewrite rule instance denote the same value. Scheme rules
/// are instantiated at all sorts up to the structure's sort depth.
pub fn check_model(s: &FiniteStructure, theory: &TheoryBundle, limits: CheckLimits) -> ModelReport {
    let mut c = Checker { s, limits, failures: Vec::new(), skipped: Vec::new() };
    let axioms = theory.axioms.iter().enumerate().map(|(i, a)| c.axiom(format!("axiom {i}"), a)).collect();
    let bases: Vec<Arc<str>> = s.domains.keys().cloned().collect();
    let universe = sorts_up_to(&bases, s.sort_depth.max(1));
    let mut rules = Vec::new();
    for (i, rule) in theory.system.rules.iter().enumerate() {
        let item = rule.name.clone().unwrap_or_else(|| format!("rule {i}"));
        let mut sum = ItemSummary { item: item.clone(), instances: 0, assignments: 0, skipped: 0 };
        for inst in instances(&rule.sort_params, &universe) {
            let sorts: Vec<String> = rule.sort_params.iter().map(|p| inst[p].to_string()).collect();
            let (lhs, rhs) = (rule.lhs.map_sorts(&inst), rule.rhs.map_sorts(&inst));
            let vars: Vec<Var> = rule.vars.iter().map(|v| Var { name: v.name.clone(), sort: v.sort.subst(&inst) }).collect();
            match c.rule_instance(&item, &sorts, &vars, &lhs, &rhs) {
                Ok(n) => {
                    sum.instances += 1;
                    sum.assignments += n;
                }
                Err(e) => {
                    sum.skipped += 1;
                    c.skip(&item, &sorts, e);
                }
            }
        }
        rules.push(sum);
    }
    ModelReport { holds: c.failures.is_empty(), scope: MODEL_CHECK_SCOPE, axioms, rules, failures: c.failures, skipped: c.skipped }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessViolation {
    pub proof: usize,
    pub sequent: String,
    pub assignment: BTreeMap<String, String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub proofs: usize,
    pub assignments: usize,
    /// Proofs whose free variables range over domains too large to enumerate.
    pub skipped: Vec<usize>,
    pub violations: Vec<SoundnessViolation>,
}

/// Evaluates the conclusion of every proof under all assignments of its free
/// variables and reports each one that is not positive.
pub fn check_soundness_sample(s: &FiniteStructure, proofs: &[ProofTree], limits: CheckLimits) -> SoundnessReport {
    let mut r = SoundnessReport { proofs: proofs.len(), assignments: 0, skipped: Vec::new(), violations: Vec::new() };
    for (i, p) in proofs.iter().enumerate() {
        let vars: Vec<Var> = p.conclusion.free_vars().into_iter().collect();
        let Ok(phis) = assignments(s, &vars, limits.max_assignments) else {
            r.skipped.push(i);
            continue;
        };
        for phi in phis {
            r.assignments += 1;
            let v = denote_sequent(s, &phi, &p.conclusion);
            let ok = matches!(v, Ok(Some(x)) if s.tva.is_positive(x));
            if !ok {
                let value = match v {
                    Ok(v) => show_truth(s, v),
                    Err(e) => e.to_string(),
                };
                r.violations.push(SoundnessViolation {
                    proof: i,
                    sequent: p.conclusion.to_string(),
                    assignment: show_assignment(s, &phi),
                    value,
                });
                break;
            }
        }
    }
    r
}
