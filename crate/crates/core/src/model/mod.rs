//! Finite structures valued in truth values algebras, denotations and model
//! checking.

mod check;
mod enumerate;
mod eval;
mod file;
mod structure;

#[cfg(test)]
mod tests;

pub use check::{
    check_model, check_soundness_sample, sorts_up_to, CheckLimits, ItemSummary, ModelFailure, ModelFailureKind,
    ModelReport, Skipped, SoundnessReport, SoundnessViolation, MODEL_CHECK_SCOPE,
};
pub use enumerate::{all_structures, MAX_STRUCTURES};
pub use eval::{assignments, connective, denote_prop, denote_sequent, denote_term, parse_value, Assignment, Truth};
pub use file::{
    build_structure, bundled_algebra, load_structure, resolve_algebra, resolve_theory, AlgebraRef, StructureFile,
    SttModelSpec,
};
pub use structure::{Builtin, Conn, FiniteStructure, Fun, Interp, ModelError, Value, DEFAULT_DOMAIN_CAP};
