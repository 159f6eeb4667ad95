//! Built-in theories and the theory file format.

mod file;
mod stt_model;

pub use file::{parse_theory, print_theory, TheoryBundle, TheoryError};
pub use stt_model::{build_stt_model, build_stt_model_capped, SortDepthBound, SttModelError};

pub const STT_SRC: &str = include_str!("../../corpus/stt.thy");
pub const PIMPQ_SRC: &str = include_str!("../../corpus/pimpq.thy");
pub const QIMPP_SRC: &str = include_str!("../../corpus/qimpp.thy");
pub const SUBSET_SRC: &str = include_str!("../../corpus/subset.thy");

fn builtin(src: &str) -> TheoryBundle {
    TheoryBundle::parse(src).expect("built-in theory parses")
}

/// Simple type theory with combinators `K`, `S`, reified connectives and `eps`.
pub fn stt_theory() -> TheoryBundle {
    builtin(STT_SRC)
}

/// The propositional theories `P --> (P => Q)` and `P --> (Q => P)`, in that order.
pub fn example_theories() -> Vec<TheoryBundle> {
    vec![builtin(PIMPQ_SRC), builtin(QIMPP_SRC)]
}

pub fn subset_theory() -> TheoryBundle {
    builtin(SUBSET_SRC)
}

pub const BUILTIN_NAMES: &[&str] = &["stt", "pimpq", "qimpp", "subset"];

pub fn builtin_by_name(name: &str) -> Option<TheoryBundle> {
    let src = match name.to_ascii_lowercase().as_str() {
        "stt" => STT_SRC,
        "pimpq" => PIMPQ_SRC,
        "qimpp" => QIMPP_SRC,
        "subset" => SUBSET_SRC,
        _ => return None,
    };
    Some(builtin(src))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{Expr, Sort};
    use crate::rewriting::RuleKind;

    #[test]
    fn stt_has_the_nine_rule_schemes() {
        let stt = stt_theory();
        let names: Vec<_> = stt.system.rules.iter().map(|r| r.name.clone().unwrap()).collect();
        assert_eq!(
            names,
            ["S", "K", "eps-top", "eps-bot", "eps-imp", "eps-and", "eps-or", "eps-all", "eps-ex"]
        );
        assert!(stt.axioms.is_empty());
        assert!(stt.system.rules.iter().all(|r| r.is_left_linear()));
    }

    #[test]
    fn k_rule_is_present_with_its_shape() {
        let stt = stt_theory();
        let k = &stt.system.rules[1];
        assert_eq!(k.kind(), RuleKind::Term);
        assert_eq!(k.lhs.to_string(), "(app (app (_ K T U) x) y)");
        assert_eq!(k.rhs.to_string(), "x");
    }

    #[test]
    fn quantifier_rule_declares_a_fresh_binder() {
        let stt = stt_theory();
        let all = &stt.system.rules[7];
        assert_eq!(all.kind(), RuleKind::Prop);
        assert_eq!(all.fresh, vec![std::sync::Arc::from("y")]);
        assert_eq!(all.rhs.to_string(), "(forall (y T) (eps (app x y)))");
        assert!(matches!(all.rhs, Expr::Prop(_)));
    }

    #[test]
    fn eps_is_a_unary_predicate_on_o() {
        let stt = stt_theory();
        let eps = stt.sig().pred("eps").unwrap();
        assert_eq!(eps.args, vec![Sort::base("o")]);
        assert!(eps.params.is_empty());
    }

    #[test]
    fn example_theories_are_single_rule_and_axiom_free() {
        let ts = example_theories();
        assert_eq!(ts[0].name, "pimpq");
        assert_eq!(ts[1].name, "qimpp");
        assert_eq!(ts[0].system.rules[0].lhs.to_string(), "P");
        assert_eq!(ts[0].system.rules[0].rhs.to_string(), "(=> P Q)");
        assert_eq!(ts[1].system.rules[0].rhs.to_string(), "(=> Q P)");
        assert!(ts.iter().all(|t| t.axioms.is_empty() && t.system.rules.len() == 1));
    }

    #[test]
    fn printed_theories_parse_back_identically() {
        for name in BUILTIN_NAMES {
            let t = builtin_by_name(name).unwrap();
            let again = TheoryBundle::parse(&t.to_text()).unwrap();
            assert_eq!(again, t, "{name}");
        }
    }

    #[test]
    fn invalid_rules_are_rejected() {
        let src = "(theory bad (sorts i) (fun f (i) i) (rule :vars ((x i)) x (f x)))";
        assert!(TheoryBundle::parse(src).is_err());
        let src = "(theory bad (sorts i) (fun f (i) i) (rule :vars ((x i) (y i)) (f x) y))";
        assert!(matches!(TheoryBundle::parse(src), Err(TheoryError::Rule { .. })));
        let src = "(theory bad (pred P ()) (pred Q ()) (rule (and P Q) P))";
        assert!(TheoryBundle::parse(src).is_err());
    }
}
