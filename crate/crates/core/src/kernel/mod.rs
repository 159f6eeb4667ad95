//! Natural deduction modulo: proof trees, checking, classification and reduction.

mod check;
mod classify;
mod ops;
mod reduce;
mod text;
mod tree;

pub use check::{check, resolve_hyp, CheckFailure, CheckReport, FailureKind};
pub use classify::{is_cut_free, is_neutral, ProofShape, ProofSkeleton};
pub use ops::{canonical, cut_hyp, rename_eigen, retarget, subst_proof, weaken};
pub use reduce::{find_redexes, normalize, reduce_step, resolve_hyps, RedexKind, ReductionTrace, TraceStatus};
pub use text::{parse_proof, parse_proof_str, print_proof};
pub use tree::{open_quant, Hyp, NodePath, ProofTree, Rule, RuleData};

pub const Q_PROOF_SRC: &str = include_str!("../../corpus/paper_q_proof.sexp");
pub const PROOF_REFL_SRC: &str = include_str!("../../corpus/proof_refl.sexp");
