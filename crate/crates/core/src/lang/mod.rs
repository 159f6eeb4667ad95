//! Many-sorted syntax: sorts, signatures, terms, propositions, sequents,
//! substitution and the textual format.

mod check;
mod error;
mod signature;
mod sort;
mod subst;
mod syntax;
mod text;

pub use check::{check_prop, well_sorted};
pub use error::{ParseError, SortError};
pub use signature::{FunDecl, PredDecl, Rank, Signature};
pub use sort::{Sort, SortSubst};
pub use subst::{alpha_eq, apply_subst, free_vars, Substitution, Syntax};
pub use syntax::{fresh_name, Binder, Context, Prop, Sequent, Symbol, Term, Var};
pub use text::{
    parse_expr, parse_prop, parse_prop_str, parse_sequent, parse_sort, parse_term, parse_term_str,
    parse_var_decl, sort_sexp, Expr, Printer, Scope, RESERVED,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sexp;
    use std::collections::BTreeSet;

    fn i() -> Sort {
        Sort::base("i")
    }
    fn o() -> Sort {
        Sort::base("o")
    }

    /// A fragment of the combinator signature plus a few first-order symbols.
    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_sort("i").unwrap();
        s.add_sort("o").unwrap();
        let (t, u) = (Sort::base("T"), Sort::base("U"));
        s.add_fun("K", &["T", "U"], vec![], Sort::arrows(&[t.clone(), u.clone()], t.clone())).unwrap();
        s.add_fun("app", &["T", "U"], vec![Sort::arrow(t.clone(), u.clone()), t.clone()], u.clone()).unwrap();
        s.add_fun("c", &[], vec![], i()).unwrap();
        s.add_fun("f", &[], vec![i()], i()).unwrap();
        s.add_pred("P", &[], vec![i()]).unwrap();
        s.add_pred("Q", &[], vec![i()]).unwrap();
        s.add_pred("R", &[], vec![i(), i()]).unwrap();
        s.add_pred("mem", &[], vec![i(), i()]).unwrap();
        s.add_pred("subset", &[], vec![i(), i()]).unwrap();
        s
    }

    fn scope() -> Scope {
        Scope::from_vars(&[
            Var::new("x", i()),
            Var::new("y", i()),
            Var::new("z", i()),
            Var::new("a", i()),
            Var::new("b", o()),
        ])
    }

    fn prop(src: &str) -> Prop {
        parse_prop_str(&sig(), &scope(), src).unwrap()
    }

    fn term(src: &str) -> Term {
        parse_term_str(&sig(), &scope(), src).unwrap()
    }

    #[test]
    fn k_applied_twice_has_the_first_argument_sort() {
        let t = term("(app (app (_ K i o) x) b)");
        assert_eq!(well_sorted(&sig(), &t).unwrap(), i());
        assert_eq!(well_sorted(&sig(), &term("x")).unwrap(), i());
    }

    #[test]
    fn application_of_a_non_function_is_a_sort_mismatch() {
        let e = sexp::parse_one("(app x y)").unwrap();
        let err = parse_term(&sig(), &scope(), &e).unwrap_err();
        assert!(matches!(err, ParseError::Sort(SortError::SortMismatch { .. })), "{err}");
        // The same term built by hand with explicit indices.
        let bad = Term::App(Symbol::indexed("app", vec![i(), i()]), vec![term("x"), term("y")], i());
        match well_sorted(&sig(), &bad).unwrap_err() {
            SortError::SortMismatch { subterm, .. } => assert!(subterm.contains("app")),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_symbols_and_arity_are_reported() {
        let bad = Term::App(Symbol::plain("g"), vec![], i());
        assert!(matches!(well_sorted(&sig(), &bad), Err(SortError::UnknownSymbol { .. })));
        let bad = Term::App(Symbol::plain("f"), vec![], i());
        assert!(matches!(well_sorted(&sig(), &bad), Err(SortError::ArityMismatch { .. })));
    }

    #[test]
    fn free_variables_respect_binder_scope() {
        let fv = free_vars(&prop("(forall (z i) (=> (mem z x) (mem z y)))"));
        assert_eq!(fv, BTreeSet::from([Var::new("x", i()), Var::new("y", i())]));
        assert!(free_vars(&Prop::Top).is_empty());
        let fv = free_vars(&prop("(and (P x) (exists (x i) (Q x)))"));
        assert_eq!(fv, BTreeSet::from([Var::new("x", i())]));
    }

    #[test]
    fn substitution_under_a_shadowing_binder_is_identity() {
        let p = prop("(forall (x i) (P x))");
        let s = Substitution::single(Var::new("x", i()), term("(f c)")).unwrap();
        assert_eq!(apply_subst(&s, &p), p);
    }

    #[test]
    fn substitution_renames_a_capturing_binder() {
        let p = prop("(forall (y i) (R x y))");
        let s = Substitution::single(Var::new("x", i()), term("y")).unwrap();
        let r = apply_subst(&s, &p);
        assert_eq!(r.to_string(), "(forall (y' i) (R y y'))");
        // Oracle: rename the binder first by hand, then substitute naively.
        let renamed = prop("(forall (w i) (R x w))");
        assert!(alpha_eq(&renamed, &p));
        let expected = prop("(forall (w i) (R y w))");
        assert!(alpha_eq(&r, &expected));
    }

    #[test]
    fn substitution_into_the_subset_atom() {
        let p = prop("(subset x y)");
        let s = Substitution::single(Var::new("x", i()), term("(f c)")).unwrap();
        assert_eq!(apply_subst(&s, &p), prop("(subset (f c) y)"));
    }

    #[test]
    fn alpha_equivalence_examples() {
        assert!(alpha_eq(&prop("(forall (x i) (P x))"), &prop("(forall (y i) (P y))")));
        assert!(!alpha_eq(&prop("(forall (x i) (P x))"), &prop("(forall (x i) (Q x))")));
        assert!(alpha_eq(
            &prop("(forall (x i) (exists (y i) (R x y)))"),
            &prop("(forall (y i) (exists (x i) (R y x)))")
        ));
        assert!(!alpha_eq(
            &prop("(forall (x i) (exists (y i) (R x y)))"),
            &prop("(forall (x i) (exists (y i) (R y x)))")
        ));
    }

    #[test]
    fn substitution_rejects_sort_mismatch() {
        assert!(Substitution::single(Var::new("x", i()), Term::var("b", o())).is_err());
    }

    #[test]
    fn contexts_expose_weakening_and_contraction() {
        let ctx = Context::new(vec![prop("(P x)"), prop("(Q x)")]);
        let w = ctx.weaken(1, &[prop("(P x)")]);
        assert_eq!(w.len(), 3);
        assert_eq!(w.contract(0, 1), Some(ctx.clone()));
        assert_eq!(w.contract(0, 2), None);
    }

    #[test]
    fn scheme_constants_print_their_indices() {
        let t = term("(app (app (_ K i o) x) b)");
        assert_eq!(t.to_string(), "(app (app (_ K i o) x) b)");
        let s = sig();
        let printed = Printer::new(&s).term(&t);
        assert_eq!(parse_term(&s, &scope(), &printed).unwrap(), t);
    }
}
