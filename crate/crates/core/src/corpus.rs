//! Files shipped with the library, and the expression-set format.
//!
//! ```text
//! (expressions
//!   (vars (a o) (x i))
//!   (case name expr)
//!   ...)
//! ```
//!
//! Golden files hold one `name<space>expr` line per case.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lang::{parse_expr, parse_var_decl, Expr, ParseError, Scope, Signature, Var};
use crate::sexp::parse_one;

pub const STT_EXPRS_SRC: &str = include_str!("../corpus/stt_exprs.sexp");
pub const STT_EXPRS_GOLDEN: &str = include_str!("../corpus/stt_exprs.golden");

/// Every bundled file, by file name.
pub fn bundled_corpus() -> Vec<(&'static str, &'static str)> {
    vec![
        ("paper_q_proof.sexp", crate::kernel::Q_PROOF_SRC),
        ("proof_refl.sexp", crate::kernel::PROOF_REFL_SRC),
        ("stt.thy", crate::theories::STT_SRC),
        ("pimpq.thy", crate::theories::PIMPQ_SRC),
        ("qimpp.thy", crate::theories::QIMPP_SRC),
        ("subset.thy", crate::theories::SUBSET_SRC),
        ("bool2.json", crate::tva::BOOL2_SRC),
        ("chain3.json", crate::tva::CHAIN3_SRC),
        ("lattice_square.json", crate::tva::LATTICE_SQUARE_SRC),
        ("stt_exprs.sexp", STT_EXPRS_SRC),
        ("stt_exprs.golden", STT_EXPRS_GOLDEN),
        ("pimpq_structure.json", PIMPQ_STRUCTURE_SRC),
        ("qimpp_structure.json", QIMPP_STRUCTURE_SRC),
        ("subset_structure.json", SUBSET_STRUCTURE_SRC),
        ("stt_structure.json", STT_STRUCTURE_SRC),
    ]
}

pub const PIMPQ_STRUCTURE_SRC: &str = include_str!("../corpus/pimpq_structure.json");
pub const QIMPP_STRUCTURE_SRC: &str = include_str!("../corpus/qimpp_structure.json");
pub const SUBSET_STRUCTURE_SRC: &str = include_str!("../corpus/subset_structure.json");
pub const STT_STRUCTURE_SRC: &str = include_str!("../corpus/stt_structure.json");

pub fn corpus_file(name: &str) -> Option<&'static str> {
    bundled_corpus().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

#[derive(Debug, Error)]
pub enum ExprSetError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed expression set: {0}")]
    Malformed(String),
    #[error("duplicate case `{0}`")]
    Duplicate(String),
}

#[derive(Debug, Clone)]
pub struct ExprSet {
    pub vars: Vec<Var>,
    pub cases: Vec<(String, Expr)>,
}

pub fn parse_expr_set(sig: &Signature, src: &str) -> Result<ExprSet, ExprSetError> {
    let e = parse_one(src).map_err(ParseError::from)?;
    let bad = |what: &str| ExprSetError::Malformed(what.to_string());
    if e.head() != Some("expressions") {
        return Err(bad("expected (expressions ...)"));
    }
    let items = &e.as_list().expect("a list")[1..];
    let mut vars = Vec::new();
    let mut cases: Vec<(String, Expr)> = Vec::new();
    for item in items {
        match item.head() {
            Some("vars") => {
                for d in &item.as_list().expect("a list")[1..] {
                    vars.push(parse_var_decl(sig, d)?);
                }
            }
            Some("case") => {
                let [_, name, body] = item.as_list().expect("a list") else {
                    return Err(bad(&format!("case {}", item.to_compact())));
                };
                let name = name.as_atom().ok_or_else(|| bad("case name"))?.to_string();
                if cases.iter().any(|(n, _)| *n == name) {
                    return Err(ExprSetError::Duplicate(name));
                }
                let scope = Scope::from_vars(&vars);
                cases.push((name, parse_expr(sig, &scope, body)?));
            }
            _ => return Err(bad(&item.to_compact())),
        }
    }
    Ok(ExprSet { vars, cases })
}

/// `name expr` lines; blank lines and `;` comments are skipped.
pub fn parse_golden(src: &str) -> BTreeMap<String, String> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with(';'))
        .filter_map(|l| l.split_once(' ').map(|(n, e)| (n.to_string(), e.trim().to_string())))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Printer;
    use crate::rewriting::Budget;
    use crate::theories::stt_theory;

    #[test]
    fn stt_expressions_match_golden_normal_forms() {
        let t = stt_theory();
        let set = parse_expr_set(t.sig(), STT_EXPRS_SRC).unwrap();
        let golden = parse_golden(STT_EXPRS_GOLDEN);
        assert_eq!(set.cases.len(), golden.len());
        let pr = Printer::new(t.sig());
        for (name, e) in &set.cases {
            let nf = t.system.normal_form(e, Budget::default()).unwrap();
            assert_eq!(pr.expr(&nf.result).to_compact(), golden[name], "{name}");
        }
    }

    #[test]
    fn every_bundled_file_is_listed_once() {
        let c = bundled_corpus();
        let mut names: Vec<_> = c.iter().map(|(n, _)| *n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
        assert!(corpus_file("paper_q_proof.sexp").is_some());
        assert!(corpus_file("bool2.json").is_some());
    }

    #[test]
    fn expression_set_errors() {
        let t = stt_theory();
        assert!(matches!(parse_expr_set(t.sig(), "(exprs)"), Err(ExprSetError::Malformed(_))));
        assert!(matches!(
            parse_expr_set(t.sig(), "(expressions (case a dtop) (case a dbot))"),
            Err(ExprSetError::Duplicate(_))
        ));
        assert!(parse_expr_set(t.sig(), "(expressions (case a (app dtop dtop)))").is_err());
    }

    #[test]
    fn bundled_structures_are_models() {
        use crate::model::{check_model, load_structure, CheckLimits};
        for name in ["pimpq_structure.json", "qimpp_structure.json", "subset_structure.json", "stt_structure.json"] {
            let (t, s) = load_structure(corpus_file(name).unwrap(), std::path::Path::new(".")).unwrap();
            let r = check_model(&s, &t, CheckLimits::default());
            assert!(r.holds, "{name}: {:?}", r.failures);
        }
    }
}
