//! Proof kernel and algebraic semantics for natural deduction modulo a
//! congruence generated by rewrite rules.

pub mod lang;
pub mod sexp;
pub mod rewriting;
pub mod theories;
pub mod kernel;
pub mod tva;
pub mod model;
pub mod sample;
pub mod corpus;
pub mod props;
