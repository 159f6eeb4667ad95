use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::lang::{Context, Prop, Sequent, Term, Var};

/// Inference rules of natural deduction modulo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    Axiom,
    ImpI,
    ImpE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    TopI,
    BotE,
    AllI,
    AllE,
    ExI,
    ExE,
}

impl Rule {
    pub const ALL: [Rule; 15] = [
        Rule::Axiom,
        Rule::ImpI,
        Rule::ImpE,
        Rule::AndI,
        Rule::AndE1,
        Rule::AndE2,
        Rule::OrI1,
        Rule::OrI2,
        Rule::OrE,
        Rule::TopI,
        Rule::BotE,
        Rule::AllI,
        Rule::AllE,
        Rule::ExI,
        Rule::ExE,
    ];

    /// Name used in proof files.
    pub fn name(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::ImpI => "impI",
            Rule::ImpE => "impE",
            Rule::AndI => "andI",
            Rule::AndE1 => "andE1",
            Rule::AndE2 => "andE2",
            Rule::OrI1 => "orI1",
            Rule::OrI2 => "orI2",
            Rule::OrE => "orE",
            Rule::TopI => "topI",
            Rule::BotE => "botE",
            Rule::AllI => "allI",
            Rule::AllE => "allE",
            Rule::ExI => "exI",
            Rule::ExE => "exE",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Axiom | Rule::TopI => 0,
            Rule::AndI | Rule::ImpE | Rule::ExE => 2,
            Rule::OrE => 3,
            _ => 1,
        }
    }

    pub fn is_intro(self) -> bool {
        matches!(
            self,
            Rule::ImpI | Rule::AndI | Rule::OrI1 | Rule::OrI2 | Rule::TopI | Rule::AllI | Rule::ExI
        )
    }

    pub fn is_elim(self) -> bool {
        self.major_premise().is_some()
    }

    /// Index of the major premise of an elimination rule.
    pub fn major_premise(self) -> Option<usize> {
        match self {
            Rule::ImpE | Rule::AndE1 | Rule::AndE2 | Rule::BotE | Rule::AllE | Rule::ExE => Some(0),
            Rule::OrE => Some(2),
            _ => None,
        }
    }

    /// Index of the premise in whose scope the eigenvariable lives.
    pub(crate) fn eigen_scope(self) -> Option<usize> {
        match self {
            Rule::AllI => Some(0),
            Rule::ExE => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where an axiom node finds its hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hyp {
    /// Position in the node's context.
    Context(usize),
    /// Index into the theory's axioms.
    Axiom(usize),
}

/// The instance data of a node: the propositions and terms named in the
/// side conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleData {
    /// `topI`, `botE`.
    None,
    /// `axiom`. Left empty, the hypothesis is found by search.
    Hyp(Option<Hyp>),
    /// Propositional rules: `A` and `B` of the side condition.
    Conn { a: Prop, b: Prop },
    /// `allE`, `exI`: the quantified proposition `∀x A` or `∃x A` and the witness `t`.
    Inst { quant: Prop, witness: Term },
    /// `allI`, `exE`: the quantified proposition and the eigenvariable.
    Eigen { quant: Prop, var: Var },
}

/// A fully annotated proof: every node stores its conclusion sequent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub data: RuleData,
    pub premises: Vec<ProofTree>,
}

/// Opens `∀x A` or `∃x A` at `t`, giving `(t/x)A`.
pub fn open_quant(quant: &Prop, t: &Term) -> Option<Prop> {
    match quant {
        Prop::Forall(_, body) | Prop::Exists(_, body) => Some(body.instantiate(t)),
        _ => None,
    }
}

impl ProofTree {
    pub fn new(rule: Rule, conclusion: Sequent, data: RuleData, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree { rule, conclusion, data, premises }
    }

    pub fn context(&self) -> &Context {
        &self.conclusion.context
    }

    pub fn goal(&self) -> &Prop {
        &self.conclusion.conclusion
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::depth).max().unwrap_or(0)
    }

    /// The subproof at `path` (premise indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&ProofTree> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get(*i)?.at(rest),
        }
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&ProofTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let n = out[i];
            out.extend(n.premises.iter());
            i += 1;
        }
        out
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<Var>) {
        self.conclusion.context.free_vars_into(out);
        self.conclusion.conclusion.free_vars_into(out);
        match &self.data {
            RuleData::None | RuleData::Hyp(_) => {}
            RuleData::Conn { a, b } => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            RuleData::Inst { quant, witness } => {
                quant.free_vars_into(out);
                witness.free_vars_into(out);
            }
            RuleData::Eigen { quant, var } => {
                quant.free_vars_into(out);
                out.insert(var.clone());
            }
        }
        self.premises.iter().for_each(|p| p.free_vars_into(out));
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    /// Every name occurring in the proof, free or as a binder hint.
    pub fn names_into(&self, out: &mut BTreeSet<Arc<str>>) {
        self.conclusion.names_into(out);
        match &self.data {
            RuleData::None | RuleData::Hyp(_) => {}
            RuleData::Conn { a, b } => {
                a.names_into(out);
                b.names_into(out);
            }
            RuleData::Inst { quant, witness } => {
                quant.names_into(out);
                witness.names_into(out);
            }
            RuleData::Eigen { quant, var } => {
                quant.names_into(out);
                out.insert(var.name.clone());
            }
        }
        self.premises.iter().for_each(|p| p.names_into(out));
    }

    /// Axiom on hypothesis `i` of `context`, concluding it verbatim.
    pub fn axiom(context: &Context, i: usize) -> ProofTree {
        let p = context.get(i).expect("hypothesis index in range").clone();
        ProofTree::new(Rule::Axiom, Sequent { context: context.clone(), conclusion: p }, RuleData::Hyp(Some(Hyp::Context(i))), vec![])
    }

    pub fn top_i(context: &Context) -> ProofTree {
        ProofTree::new(Rule::TopI, Sequent { context: context.clone(), conclusion: Prop::Top }, RuleData::None, vec![])
    }

    /// From `Γ, A ⊢ B` to `Γ ⊢ A ⇒ B`.
    pub fn imp_i(premise: ProofTree) -> ProofTree {
        let ctx = premise.context();
        let a = ctx.0.last().expect("premise has a discharged hypothesis").clone();
        let gamma = Context(ctx.0[..ctx.len() - 1].to_vec());
        let b = premise.goal().clone();
        ProofTree::new(
            Rule::ImpI,
            Sequent { context: gamma, conclusion: Prop::imp(a.clone(), b.clone()) },
            RuleData::Conn { a, b },
            vec![premise],
        )
    }

    /// `major` proves something congruent to `A ⇒ b`, where `A` is the goal of `minor`.
    pub fn imp_e(major: ProofTree, minor: ProofTree, b: Prop) -> ProofTree {
        let a = minor.goal().clone();
        let concl = Sequent { context: minor.context().clone(), conclusion: b.clone() };
        ProofTree::new(Rule::ImpE, concl, RuleData::Conn { a, b }, vec![major, minor])
    }

    pub fn and_i(left: ProofTree, right: ProofTree) -> ProofTree {
        let (a, b) = (left.goal().clone(), right.goal().clone());
        let concl = Sequent { context: left.context().clone(), conclusion: Prop::and(a.clone(), b.clone()) };
        ProofTree::new(Rule::AndI, concl, RuleData::Conn { a, b }, vec![left, right])
    }

    /// `major` proves something congruent to `a ∧ b`.
    pub fn and_e(second: bool, major: ProofTree, a: Prop, b: Prop) -> ProofTree {
        let goal = if second { b.clone() } else { a.clone() };
        let concl = Sequent { context: major.context().clone(), conclusion: goal };
        let rule = if second { Rule::AndE2 } else { Rule::AndE1 };
        ProofTree::new(rule, concl, RuleData::Conn { a, b }, vec![major])
    }

    /// Left (`orI1`) or right (`orI2`) injection; `other` is the missing disjunct.
    pub fn or_i(second: bool, premise: ProofTree, other: Prop) -> ProofTree {
        let p = premise.goal().clone();
        let (a, b, rule) = if second { (other, p, Rule::OrI2) } else { (p, other, Rule::OrI1) };
        let concl = Sequent { context: premise.context().clone(), conclusion: Prop::or(a.clone(), b.clone()) };
        ProofTree::new(rule, concl, RuleData::Conn { a, b }, vec![premise])
    }

    /// `left: Γ, a ⊢ C`, `right: Γ, b ⊢ C`, `major` proves something congruent to `a ∨ b`.
    pub fn or_e(left: ProofTree, right: ProofTree, major: ProofTree, a: Prop, b: Prop) -> ProofTree {
        let concl = major.conclusion.context.clone();
        let goal = left.goal().clone();
        ProofTree::new(Rule::OrE, Sequent { context: concl, conclusion: goal }, RuleData::Conn { a, b }, vec![left, right, major])
    }

    pub fn bot_e(major: ProofTree, goal: Prop) -> ProofTree {
        let concl = Sequent { context: major.context().clone(), conclusion: goal };
        ProofTree::new(Rule::BotE, concl, RuleData::None, vec![major])
    }

    /// Generalizes the premise over the eigenvariable `var`.
    pub fn all_i(premise: ProofTree, var: Var) -> ProofTree {
        let quant = Prop::forall(&var, premise.goal());
        let concl = Sequent { context: premise.context().clone(), conclusion: quant.clone() };
        ProofTree::new(Rule::AllI, concl, RuleData::Eigen { quant, var }, vec![premise])
    }

    /// `major` proves something congruent to `quant = ∀x A`; concludes `(t/x)A`.
    pub fn all_e(major: ProofTree, quant: Prop, witness: Term) -> ProofTree {
        let goal = open_quant(&quant, &witness).expect("a quantified proposition");
        let concl = Sequent { context: major.context().clone(), conclusion: goal };
        ProofTree::new(Rule::AllE, concl, RuleData::Inst { quant, witness }, vec![major])
    }

    /// `premise` proves something congruent to `(t/x)A`; concludes `quant = ∃x A`.
    pub fn ex_i(premise: ProofTree, quant: Prop, witness: Term) -> ProofTree {
        let concl = Sequent { context: premise.context().clone(), conclusion: quant.clone() };
        ProofTree::new(Rule::ExI, concl, RuleData::Inst { quant, witness }, vec![premise])
    }

    /// `major` proves something congruent to `quant = ∃x A`; `body` proves `Γ, A ⊢ B`
    /// with `A` opened at `var`.
    pub fn ex_e(major: ProofTree, body: ProofTree, quant: Prop, var: Var) -> ProofTree {
        let concl = Sequent { context: major.context().clone(), conclusion: body.goal().clone() };
        ProofTree::new(Rule::ExE, concl, RuleData::Eigen { quant, var }, vec![major, body])
    }

    /// The same node with its conclusion proposition replaced, without any checks.
    pub fn with_goal(mut self, goal: Prop) -> ProofTree {
        self.conclusion.conclusion = goal;
        self
    }
}

/// Path from the root to a node: premise indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl Serialize for NodePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
