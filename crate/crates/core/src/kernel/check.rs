use std::fmt;

use serde::Serialize;

use super::tree::{open_quant, Hyp, NodePath, ProofTree, Rule, RuleData};
use crate::lang::{check_prop, well_sorted, Context, Printer, Prop, Syntax, Term};
use crate::rewriting::{Budget, Congruence};
use crate::theories::TheoryBundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// Wrong number of premises.
    Arity,
    /// Instance data missing or of the wrong shape.
    Data,
    IllSorted,
    /// A premise's context or conclusion differs from the schema.
    Premise,
    /// A `≡` side condition was refuted.
    NotCongruent,
    /// A `≡` side condition could not be decided within the budget.
    Undecided,
    /// Eigenvariable condition violated.
    Freshness,
    /// The axiom rule found no matching hypothesis.
    Hypothesis,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureKind::Arity => "arity",
            FailureKind::Data => "data",
            FailureKind::IllSorted => "ill-sorted",
            FailureKind::Premise => "premise",
            FailureKind::NotCongruent => "not-congruent",
            FailureKind::Undecided => "undecided",
            FailureKind::Freshness => "freshness",
            FailureKind::Hypothesis => "hypothesis",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub path: NodePath,
    pub rule: Rule,
    pub kind: FailureKind,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}: {}", self.path, self.rule, self.kind, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub nodes: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }
}

struct Checker<'a> {
    theory: &'a TheoryBundle,
    budget: Budget,
    printer: Printer<'a>,
    report: CheckReport,
}

/// Context of a failing node, for messages.
struct At<'p> {
    path: &'p NodePath,
    rule: Rule,
}

impl Checker<'_> {
    fn fail(&mut self, at: &At, kind: FailureKind, message: String) {
        self.report.failures.push(CheckFailure { path: at.path.clone(), rule: at.rule, kind, message });
    }

    fn show(&self, p: &Prop) -> String {
        self.printer.prop(p).to_string()
    }

    /// Side condition `a ≡ b`.
    fn cong(&mut self, at: &At, what: &str, a: &Prop, b: &Prop) -> bool {
        if a == b {
            return true;
        }
        match self.theory.system.congruent_props(a, b, self.budget) {
            Congruence::Yes => true,
            outcome => {
                let kind = if outcome == Congruence::No { FailureKind::NotCongruent } else { FailureKind::Undecided };
                let msg = format!("{what}: {} ≡ {}", self.show(a), self.show(b));
                self.fail(at, kind, msg);
                false
            }
        }
    }

    fn same_prop(&mut self, at: &At, what: &str, found: &Prop, expected: &Prop) {
        if found != expected {
            let msg = format!("{what} is {}, expected {}", self.show(found), self.show(expected));
            self.fail(at, FailureKind::Premise, msg);
        }
    }

    fn premise(&mut self, at: &At, node: &ProofTree, i: usize, ctx: &Context, goal: Option<&Prop>) {
        let p = &node.premises[i];
        if p.context() != ctx {
            self.fail(at, FailureKind::Premise, format!("premise {i} has context of length {} that does not match the schema", p.context().len()));
        }
        if let Some(g) = goal {
            self.same_prop(at, &format!("conclusion of premise {i}"), p.goal(), g);
        }
    }

    fn sorted(&mut self, at: &At, p: &Prop) {
        if let Err(e) = check_prop(self.theory.sig(), p) {
            self.fail(at, FailureKind::IllSorted, e.to_string());
        }
    }

    fn witness(&mut self, at: &At, quant: &Prop, t: &Term) -> bool {
        match well_sorted(self.theory.sig(), t) {
            Err(e) => {
                self.fail(at, FailureKind::IllSorted, e.to_string());
                false
            }
            Ok(s) => match quant {
                Prop::Forall(x, _) | Prop::Exists(x, _) if x.sort == s => true,
                Prop::Forall(x, _) | Prop::Exists(x, _) => {
                    self.fail(at, FailureKind::IllSorted, format!("witness of sort {s} for a binder of sort {}", x.sort));
                    false
                }
                _ => false,
            },
        }
    }

    fn node(&mut self, node: &ProofTree, path: &mut NodePath, root: bool) {
        self.report.nodes += 1;
        let at = At { path: &path.clone(), rule: node.rule };
        if root {
            for h in node.context().iter() {
                self.sorted(&at, h);
            }
        }
        self.sorted(&at, node.goal());
        if node.premises.len() != node.rule.arity() {
            let msg = format!("{} premises, expected {}", node.premises.len(), node.rule.arity());
            self.fail(&at, FailureKind::Arity, msg);
        } else {
            self.schema(&at, node);
        }
        for (i, p) in node.premises.iter().enumerate() {
            path.0.push(i);
            self.node(p, path, false);
            path.0.pop();
        }
    }

    fn schema(&mut self, at: &At, node: &ProofTree) {
        let gamma = node.context();
        let goal = node.goal();
        let data_err = |s: &mut Self| s.fail(at, FailureKind::Data, format!("instance data does not fit {}", node.rule));
        match (node.rule, &node.data) {
            (Rule::Axiom, RuleData::Hyp(h)) => self.axiom(at, gamma, goal, *h),
            (Rule::TopI, RuleData::None) => {
                self.cong(at, "A ≡ ⊤", goal, &Prop::Top);
            }
            (Rule::BotE, RuleData::None) => {
                self.premise(at, node, 0, gamma, None);
                self.cong(at, "B ≡ ⊥", node.premises[0].goal(), &Prop::Bot);
            }
            (
                Rule::ImpI | Rule::ImpE | Rule::AndI | Rule::AndE1 | Rule::AndE2 | Rule::OrI1 | Rule::OrI2 | Rule::OrE,
                RuleData::Conn { a, b },
            ) => {
                self.sorted(at, a);
                self.sorted(at, b);
                self.connective(at, node, a, b);
            }
            (Rule::AllE | Rule::ExI, RuleData::Inst { quant, witness }) => {
                let shape = if node.rule == Rule::AllE { matches!(quant, Prop::Forall(..)) } else { matches!(quant, Prop::Exists(..)) };
                if !shape {
                    return data_err(self);
                }
                self.sorted(at, quant);
                if !self.witness(at, quant, witness) {
                    return;
                }
                let inst = open_quant(quant, witness).expect("quantifier");
                self.premise(at, node, 0, gamma, None);
                let p = node.premises[0].goal();
                if node.rule == Rule::AllE {
                    self.cong(at, "B ≡ ∀x A", p, quant);
                    self.cong(at, "C ≡ (t/x)A", goal, &inst);
                } else {
                    self.cong(at, "B ≡ ∃x A", goal, quant);
                    self.cong(at, "C ≡ (t/x)A", p, &inst);
                }
            }
            (Rule::AllI | Rule::ExE, RuleData::Eigen { quant, var }) => {
                let shape = if node.rule == Rule::AllI { matches!(quant, Prop::Forall(..)) } else { matches!(quant, Prop::Exists(..)) };
                let sort_ok = matches!(quant, Prop::Forall(x, _) | Prop::Exists(x, _) if x.sort == var.sort);
                if !shape || !sort_ok {
                    return data_err(self);
                }
                self.sorted(at, quant);
                let body = open_quant(quant, &Term::Var(var.clone())).expect("quantifier");
                let mut fv = std::collections::BTreeSet::new();
                gamma.free_vars_into(&mut fv);
                if node.rule == Rule::AllI {
                    if fv.contains(var) {
                        self.fail(at, FailureKind::Freshness, format!("eigenvariable {} is free in the context", var.name));
                    }
                    self.premise(at, node, 0, gamma, Some(&body));
                    self.cong(at, "B ≡ ∀x A", goal, quant);
                } else {
                    if fv.contains(var) || goal.free_vars().contains(var) {
                        self.fail(at, FailureKind::Freshness, format!("eigenvariable {} is free in the context or conclusion", var.name));
                    }
                    self.premise(at, node, 0, gamma, None);
                    self.cong(at, "C ≡ ∃x A", node.premises[0].goal(), quant);
                    self.premise(at, node, 1, &gamma.extended(body), Some(goal));
                }
            }
            _ => data_err(self),
        }
    }

    fn connective(&mut self, at: &At, node: &ProofTree, a: &Prop, b: &Prop) {
        let gamma = node.context();
        let goal = node.goal();
        match node.rule {
            Rule::ImpI => {
                self.premise(at, node, 0, &gamma.extended(a.clone()), Some(b));
                self.cong(at, "C ≡ A ⇒ B", goal, &Prop::imp(a.clone(), b.clone()));
            }
            Rule::ImpE => {
                self.same_prop(at, "conclusion", goal, b);
                self.premise(at, node, 0, gamma, None);
                self.premise(at, node, 1, gamma, Some(a));
                self.cong(at, "C ≡ A ⇒ B", node.premises[0].goal(), &Prop::imp(a.clone(), b.clone()));
            }
            Rule::AndI => {
                self.premise(at, node, 0, gamma, Some(a));
                self.premise(at, node, 1, gamma, Some(b));
                self.cong(at, "C ≡ A ∧ B", goal, &Prop::and(a.clone(), b.clone()));
            }
            Rule::AndE1 | Rule::AndE2 => {
                let expected = if node.rule == Rule::AndE1 { a } else { b };
                self.same_prop(at, "conclusion", goal, expected);
                self.premise(at, node, 0, gamma, None);
                self.cong(at, "C ≡ A ∧ B", node.premises[0].goal(), &Prop::and(a.clone(), b.clone()));
            }
            Rule::OrI1 | Rule::OrI2 => {
                let expected = if node.rule == Rule::OrI1 { a } else { b };
                self.premise(at, node, 0, gamma, Some(expected));
                self.cong(at, "C ≡ A ∨ B", goal, &Prop::or(a.clone(), b.clone()));
            }
            Rule::OrE => {
                self.premise(at, node, 0, &gamma.extended(a.clone()), Some(goal));
                self.premise(at, node, 1, &gamma.extended(b.clone()), Some(goal));
                self.premise(at, node, 2, gamma, None);
                self.cong(at, "D ≡ A ∨ B", node.premises[2].goal(), &Prop::or(a.clone(), b.clone()));
            }
            _ => unreachable!("connective rules only"),
        }
    }

    fn axiom(&mut self, at: &At, gamma: &Context, goal: &Prop, hyp: Option<Hyp>) {
        match hyp {
            Some(Hyp::Context(i)) => match gamma.get(i) {
                Some(h) => {
                    self.cong(at, "B ≡ A", goal, h);
                }
                None => self.fail(at, FailureKind::Hypothesis, format!("no hypothesis {i} in a context of length {}", gamma.len())),
            },
            Some(Hyp::Axiom(j)) => match self.theory.axioms.get(j) {
                Some(h) => {
                    let h = h.clone();
                    self.cong(at, "B ≡ A", goal, &h);
                }
                None => self.fail(at, FailureKind::Hypothesis, format!("the theory has no axiom {j}")),
            },
            None => match resolve_hyp(self.theory, gamma, goal, self.budget) {
                Ok(_) => {}
                Err(undecided) => {
                    let kind = if undecided { FailureKind::Undecided } else { FailureKind::Hypothesis };
                    let msg = format!("no hypothesis congruent to {}", self.show(goal));
                    self.fail(at, kind, msg);
                }
            },
        }
    }
}

/// Finds a hypothesis (context first, then theory axioms) congruent to `goal`.
/// On failure, tells whether some comparison was undecided.
pub fn resolve_hyp(theory: &TheoryBundle, gamma: &Context, goal: &Prop, budget: Budget) -> Result<Hyp, bool> {
    let candidates = gamma
        .iter()
        .enumerate()
        .map(|(i, h)| (Hyp::Context(i), h))
        .chain(theory.axioms.iter().enumerate().map(|(j, h)| (Hyp::Axiom(j), h)));
    let candidates: Vec<_> = candidates.collect();
    if let Some((h, _)) = candidates.iter().find(|(_, h)| *h == goal) {
        return Ok(*h);
    }
    let mut undecided = false;
    for (h, p) in candidates {
        match theory.system.congruent_props(goal, p, budget) {
            Congruence::Yes => return Ok(h),
            Congruence::Undecided => undecided = true,
            Congruence::No => {}
        }
    }
    Err(undecided)
}

/// Checks every node of `proof` against its rule schema.
pub fn check(theory: &TheoryBundle, proof: &ProofTree, budget: Budget) -> CheckReport {
    let mut c = Checker { theory, budget, printer: Printer::new(theory.sig()), report: CheckReport::default() };
    c.node(proof, &mut NodePath::default(), true);
    c.report
}
