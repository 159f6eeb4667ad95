//! Finite truth values algebras.

mod algebra;
mod heyting;
mod mutate;
mod validate;

#[cfg(test)]
mod tests;

pub use algebra::{closure, members, singleton, FiniteTva, Subset, TvaError, MAX_ELEMENTS};
pub use heyting::{heyting_to_tva, standard_family, FiniteHeyting, HeytingError, MAX_HEYTING};
pub use mutate::{mutation_sensitivity, single_entry_mutations, Mutation, Sensitivity};
pub use validate::{
    glb, lub, set_leq, validate_complete, validate_order, validate_tva, ConditionResult, TvaReport, Verdict, Witness,
};

pub const BOOL2_SRC: &str = include_str!("../../corpus/bool2.json");
pub const CHAIN3_SRC: &str = include_str!("../../corpus/chain3.json");
pub const LATTICE_SQUARE_SRC: &str = include_str!("../../corpus/lattice_square.json");

/// The two-element Boolean algebra with its order.
pub fn bool2() -> FiniteTva {
    FiniteTva::from_json(BOOL2_SRC).expect("bundled algebra")
}
