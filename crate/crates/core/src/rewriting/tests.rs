use super::*;
use crate::lang::{parse_expr, Expr, Prop, Scope, Sort, Var};
use crate::sexp;
use crate::theories::{example_theories, stt_theory, subset_theory};

fn expr(sys: &RewriteSystem, scope: &Scope, src: &str) -> Expr {
    parse_expr(&sys.sig, scope, &sexp::parse_one(src).unwrap()).unwrap()
}

fn stt_scope() -> Scope {
    let o = Sort::base("o");
    Scope::from_vars(&[Var::new("a", o.clone()), Var::new("b", o), Var::new("c", Sort::base("i"))])
}

#[test]
fn matching_binds_pattern_variables() {
    let stt = stt_theory();
    let sc = stt_scope();
    let pat = expr(&stt.system, &sc, "(app (app (_ K o o) a) b)");
    let subj = expr(&stt.system, &sc, "(app (app (_ K o o) dtop) (app (app dand dbot) dtop))");
    let m = match_pattern(&pat, &subj).unwrap();
    let a = Var::new("a", Sort::base("o"));
    assert_eq!(m.get(&a).unwrap().to_string(), "dtop");
    assert_eq!(m.get(&Var::new("b", Sort::base("o"))).unwrap().to_string(), "(app (app dand dbot) dtop)");
}

#[test]
fn non_linear_patterns_need_equal_subterms() {
    let sys = subset_theory().system;
    let i = Sort::base("i");
    let sc = Scope::from_vars(&[Var::new("x", i.clone()), Var::new("a", i.clone()), Var::new("b", i)]);
    let pat = expr(&sys, &sc, "(mem x x)");
    assert!(match_pattern(&pat, &expr(&sys, &sc, "(mem a b)")).is_none());
    assert!(match_pattern(&pat, &expr(&sys, &sc, "(mem a a)")).is_some());
}

#[test]
fn eps_of_reified_top_steps_to_top() {
    let stt = stt_theory();
    let e = expr(&stt.system, &Scope::new(), "(eps dtop)");
    assert_eq!(rewrite_step(&stt.system, &e), Some(Expr::Prop(Prop::Top)));
    assert_eq!(rewrite_step(&stt.system, &Expr::Prop(Prop::Top)), None);
}

#[test]
fn one_step_under_implication_in_pimpq() {
    let sys = &example_theories()[0].system;
    let e = expr(sys, &Scope::new(), "(=> P Q)");
    let r = rewrite_step(sys, &e).unwrap();
    assert_eq!(r, expr(sys, &Scope::new(), "(=> (=> P Q) Q)"));
}

#[test]
fn reified_conjunction_normalizes() {
    let stt = stt_theory();
    let e = expr(&stt.system, &Scope::new(), "(eps (app (app dand dtop) dtop))");
    let nf = normal_form(&stt.system, &e, Budget::default()).unwrap();
    assert_eq!(nf.result.to_string(), "(and true true)");
    assert_eq!(nf.steps, 3);
    let again = normal_form(&stt.system, &nf.result, Budget::default()).unwrap();
    assert_eq!(again.result, nf.result);
    assert_eq!(again.steps, 0);
}

#[test]
fn pimpq_has_no_normal_form_for_p() {
    let sys = &example_theories()[0].system;
    let p = expr(sys, &Scope::new(), "P");
    // Hand trace: P, (=> P Q), (=> (=> P Q) Q), ... every reduct still contains P.
    let mut cur = p.clone();
    for _ in 0..5 {
        cur = rewrite_step(sys, &cur).unwrap();
        assert!(cur.to_string().contains('P'));
    }
    let err = normal_form(sys, &p, Budget::default().with_steps(50)).unwrap_err();
    assert_eq!(err.steps, 50);
}

#[test]
fn congruence_examples() {
    let subset = subset_theory();
    let i = Sort::base("i");
    let sc = Scope::from_vars(&[Var::new("x", i.clone()), Var::new("y", i)]);
    let a = expr(&subset.system, &sc, "(subset x y)");
    let b = expr(&subset.system, &sc, "(forall (z i) (=> (mem z x) (mem z y)))");
    assert_eq!(congruent(&subset.system, &a, &b, Budget::default()), Congruence::Yes);

    let pimpq = &example_theories()[0].system;
    let p = expr(pimpq, &Scope::new(), "P");
    let pq = expr(pimpq, &Scope::new(), "(=> P Q)");
    assert_eq!(congruent(pimpq, &p, &pq, Budget::default()), Congruence::Yes);
    // Q is normal but P has infinitely many reducts.
    let q = expr(pimpq, &Scope::new(), "Q");
    assert_eq!(congruent(pimpq, &p, &q, Budget::new(200, 64).unwrap()), Congruence::Undecided);

    let stt = stt_theory();
    let (t, f) = (Expr::Prop(Prop::Top), Expr::Prop(Prop::Bot));
    assert_eq!(congruent(&stt.system, &t, &f, Budget::default()), Congruence::No);
}

#[test]
fn quantifier_rule_introduces_a_fresh_binder_name() {
    let stt = stt_theory();
    let o = Sort::base("o");
    let sc = Scope::from_vars(&[Var::new("y", Sort::arrow(o.clone(), o.clone()))]);
    let e = expr(&stt.system, &sc, "(eps (app (_ dall o) y))");
    let r = rewrite_step(&stt.system, &e).unwrap();
    assert_eq!(r.to_string(), "(forall (y1 o) (eps (app y y1)))");
}

#[test]
fn scheme_rules_instantiate_at_the_subject_sorts() {
    let stt = stt_theory();
    let e = expr(&stt.system, &Scope::new(), "(eps (app (app (app (_ S o (-> o o) o) (_ K o (-> o o))) (_ K o o)) dtop))");
    let nf = normal_form(&stt.system, &e, Budget::default()).unwrap();
    assert_eq!(nf.result.to_string(), "true");
}

#[test]
fn budget_must_be_positive() {
    assert!(Budget::new(0, 1).is_none());
    assert!(Budget::new(1, 0).is_none());
    assert_eq!(Budget::default(), Budget::new(10_000, 1_024).unwrap());
}
