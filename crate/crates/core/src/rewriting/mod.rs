//! Oriented rewriting on terms and atoms, normal forms under a budget, and a
//! bounded decision procedure for the generated congruence.

mod engine;
mod rule;

pub use engine::{congruent, normal_form, rewrite_step, Budget, Congruence, FuelExhausted, NormalForm, RewriteSystem};
pub use rule::{match_pattern, Match, RewriteRule, RuleError, RuleKind};

#[cfg(test)]
mod tests;
