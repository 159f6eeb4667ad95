//! Proof files.
//!
//! ```text
//! (proof
//!   (vars (x i))
//!   (impE :concl (seq () Q) :A P :B Q
//!     (impI :concl (seq () (=> P Q)) :A P :B Q ...)
//!     ...))
//! ```
//!
//! Keys: `:concl` (required), `:A`, `:B`, `:x (v T)`, `:t term`, and for
//! axioms `:hyp N` or `:hyp (axiom N)`. For quantifier rules `:A` is the body,
//! in which `:x` is free. Data that can be read off the premises may be left out.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::tree::{open_quant, Hyp, ProofTree, Rule, RuleData};
use crate::lang::{
    fresh_name, parse_prop, parse_sequent, parse_term, parse_var_decl, sort_sexp, ParseError, Printer, Prop, Scope,
    Signature, Term, Var,
};
use crate::sexp::{self, Sexp};

fn malformed(what: &'static str, e: &Sexp) -> ParseError {
    ParseError::malformed(what, e)
}

struct Node<'e> {
    rule: Rule,
    keys: Vec<(&'e str, &'e Sexp)>,
    premises: Vec<&'e Sexp>,
}

fn split_node(e: &Sexp) -> Result<Node<'_>, ParseError> {
    let items = e.as_list().ok_or_else(|| malformed("proof node", e))?;
    let head = items.first().and_then(Sexp::as_atom).ok_or_else(|| malformed("proof node", e))?;
    let rule = Rule::from_name(head).ok_or_else(|| malformed("rule name", &items[0]))?;
    let mut keys = Vec::new();
    let mut premises = Vec::new();
    let mut i = 1;
    while i < items.len() {
        match items[i].as_atom() {
            Some(k) if k.starts_with(':') => {
                let v = items.get(i + 1).ok_or_else(|| malformed("keyword value", e))?;
                keys.push((&k[1..], v));
                i += 2;
            }
            Some(_) => return Err(malformed("proof node item", &items[i])),
            None => {
                premises.push(&items[i]);
                i += 1;
            }
        }
    }
    Ok(Node { rule, keys, premises })
}

impl<'e> Node<'e> {
    fn key(&self, k: &str) -> Option<&'e Sexp> {
        self.keys.iter().find(|(n, _)| *n == k).map(|(_, v)| *v)
    }
}

fn parse_node(sig: &Signature, scope: &Scope, e: &Sexp) -> Result<ProofTree, ParseError> {
    let node = split_node(e)?;
    let concl_e = node.key("concl").ok_or_else(|| malformed("proof node without :concl", e))?;
    let var = node.key("x").map(|v| parse_var_decl(sig, v)).transpose()?;
    let inner = match &var {
        Some(v) => scope.with(v.clone()),
        None => scope.clone(),
    };
    let eigen = matches!(node.rule, Rule::AllI | Rule::ExE);
    let premise_scope = if eigen { &inner } else { scope };
    let conclusion = parse_sequent(sig, scope, concl_e)?;
    let premises =
        node.premises.iter().map(|p| parse_node(sig, premise_scope, p)).collect::<Result<Vec<_>, _>>()?;
    let prop_key = |k: &str, sc: &Scope| node.key(k).map(|v| parse_prop(sig, sc, v)).transpose();
    let goal = &conclusion.conclusion;
    let missing = |what: &'static str| malformed(what, e);
    let data = match node.rule {
        Rule::Axiom => RuleData::Hyp(match node.key("hyp") {
            None => None,
            Some(Sexp::Atom(n)) => Some(Hyp::Context(n.parse().map_err(|_| malformed("hypothesis index", e))?)),
            Some(h @ Sexp::List(items)) => match items.as_slice() {
                [Sexp::Atom(a), Sexp::Atom(n)] if a == "axiom" => {
                    Some(Hyp::Axiom(n.parse().map_err(|_| malformed("axiom index", h))?))
                }
                _ => return Err(malformed("hypothesis reference", h)),
            },
        }),
        Rule::TopI | Rule::BotE => RuleData::None,
        Rule::ImpI | Rule::ImpE | Rule::AndI | Rule::AndE1 | Rule::AndE2 | Rule::OrI1 | Rule::OrI2 | Rule::OrE => {
            let (a, b) = (prop_key("A", scope)?, prop_key("B", scope)?);
            let (da, db) = default_conn(node.rule, goal, &premises);
            let a = a.or(da).ok_or_else(|| missing("proof node without :A"))?;
            let b = b.or(db).ok_or_else(|| missing("proof node without :B"))?;
            RuleData::Conn { a, b }
        }
        Rule::AllE | Rule::ExI => {
            let t = node.key("t").ok_or_else(|| missing("proof node without :t"))?;
            let witness = parse_term(sig, scope, t)?;
            let quant = match (&var, prop_key("A", &inner)?) {
                (Some(v), Some(body)) => quantify(node.rule, v, &body),
                (None, None) => {
                    let q = if node.rule == Rule::AllE { premises.first().map(|p| p.goal().clone()) } else { Some(goal.clone()) };
                    q.filter(|q| matches!((node.rule, q), (Rule::AllE, Prop::Forall(..)) | (Rule::ExI, Prop::Exists(..))))
                        .ok_or_else(|| missing("proof node without :x and :A"))?
                }
                _ => return Err(missing("proof node with only one of :x and :A")),
            };
            RuleData::Inst { quant, witness }
        }
        Rule::AllI | Rule::ExE => {
            let v = var.ok_or_else(|| missing("proof node without :x"))?;
            let body = match prop_key("A", &inner)? {
                Some(b) => b,
                None => {
                    let b = if node.rule == Rule::AllI {
                        premises.first().map(|p| p.goal().clone())
                    } else {
                        premises.get(1).and_then(|p| p.context().0.last().cloned())
                    };
                    b.ok_or_else(|| missing("proof node without :A"))?
                }
            };
            RuleData::Eigen { quant: quantify(node.rule, &v, &body), var: v }
        }
    };
    Ok(ProofTree { rule: node.rule, conclusion, data, premises })
}

fn quantify(rule: Rule, v: &Var, body: &Prop) -> Prop {
    match rule {
        Rule::AllI | Rule::AllE => Prop::forall(v, body),
        _ => Prop::exists(v, body),
    }
}

fn default_conn(rule: Rule, goal: &Prop, premises: &[ProofTree]) -> (Option<Prop>, Option<Prop>) {
    let g = |i: usize| premises.get(i).map(|p| p.goal().clone());
    let parts = |p: Option<&Prop>| match p {
        Some(Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b)) => (Some((**a).clone()), Some((**b).clone())),
        _ => (None, None),
    };
    match rule {
        Rule::ImpI => {
            let a = premises.first().and_then(|p| p.context().0.last().cloned());
            (a, g(0))
        }
        Rule::ImpE => (g(1), Some(goal.clone())),
        Rule::AndI => (g(0), g(1)),
        Rule::AndE1 => (Some(goal.clone()), parts(premises.first().map(|p| p.goal())).1),
        Rule::AndE2 => (parts(premises.first().map(|p| p.goal())).0, Some(goal.clone())),
        Rule::OrI1 => (g(0), parts(Some(goal)).1),
        Rule::OrI2 => (parts(Some(goal)).0, g(0)),
        Rule::OrE => {
            let hyp = |i: usize| premises.get(i).and_then(|p| p.context().0.last().cloned());
            (hyp(0), hyp(1))
        }
        _ => (None, None),
    }
}

/// Parses `(proof (vars ...) NODE)` or a bare node.
pub fn parse_proof(sig: &Signature, e: &Sexp) -> Result<ProofTree, ParseError> {
    match e.as_list() {
        Some([Sexp::Atom(h), rest @ ..]) if h == "proof" => {
            let mut scope = Scope::new();
            let mut body = None;
            for item in rest {
                if item.head() == Some("vars") {
                    for v in &item.as_list().expect("a list")[1..] {
                        scope.declare(parse_var_decl(sig, v)?);
                    }
                } else if body.replace(item).is_some() {
                    return Err(malformed("proof with more than one root", e));
                }
            }
            parse_node(sig, &scope, body.ok_or_else(|| malformed("empty proof", e))?)
        }
        _ => parse_node(sig, &Scope::new(), e),
    }
}

pub fn parse_proof_str(sig: &Signature, src: &str) -> Result<ProofTree, ParseError> {
    parse_proof(sig, &sexp::parse_one(src)?)
}

fn var_sexp(v: &Var) -> Sexp {
    Sexp::list([Sexp::atom(&*v.name), sort_sexp(&v.sort)])
}

fn print_node(printer: &Printer, p: &ProofTree) -> Sexp {
    let mut v = vec![Sexp::atom(p.rule.name()), Sexp::atom(":concl"), printer.sequent(&p.conclusion)];
    let mut kv = |k: &str, e: Sexp| {
        v.push(Sexp::atom(k));
        v.push(e);
    };
    match &p.data {
        RuleData::None | RuleData::Hyp(None) => {}
        RuleData::Hyp(Some(Hyp::Context(i))) => kv(":hyp", Sexp::atom(i.to_string())),
        RuleData::Hyp(Some(Hyp::Axiom(j))) => kv(":hyp", Sexp::list([Sexp::atom("axiom"), Sexp::atom(j.to_string())])),
        RuleData::Conn { a, b } => {
            kv(":A", printer.prop(a));
            kv(":B", printer.prop(b));
        }
        RuleData::Inst { quant, witness } => {
            let (Prop::Forall(x, _) | Prop::Exists(x, _)) = quant else { unreachable!("checked shape") };
            let mut taken = BTreeSet::new();
            quant.names_into(&mut taken);
            witness.names_into(&mut taken);
            let name: Arc<str> = fresh_name(&x.name, &taken);
            let v = Var { name, sort: x.sort.clone() };
            let body = open_quant(quant, &Term::Var(v.clone())).expect("quantifier");
            kv(":x", var_sexp(&v));
            kv(":A", printer.prop(&body));
            kv(":t", printer.term(witness));
        }
        RuleData::Eigen { quant, var } => {
            let body = open_quant(quant, &Term::Var(var.clone())).expect("quantifier");
            kv(":x", var_sexp(var));
            kv(":A", printer.prop(&body));
        }
    }
    v.extend(p.premises.iter().map(|q| print_node(printer, q)));
    Sexp::List(v)
}

/// Prints a proof file, declaring every free variable up front.
pub fn print_proof(sig: &Signature, p: &ProofTree) -> Sexp {
    let printer = Printer::new(sig);
    let vars = p.free_vars();
    let mut items = vec![Sexp::atom("proof")];
    if !vars.is_empty() {
        let mut decl = vec![Sexp::atom("vars")];
        decl.extend(vars.iter().map(var_sexp));
        items.push(Sexp::List(decl));
    }
    items.push(print_node(&printer, p));
    Sexp::List(items)
}
