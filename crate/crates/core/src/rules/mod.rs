//! The cumulative rule systems as executable checkers and a saturation-based
//! entailment engine over a finite concept universe.
//!
//! Rule instances are taken over universe representatives, one per distinct
//! interpretation tuple; strict premises are decided by the lattice order of
//! the interpretations.

mod check;
mod entail;
pub(crate) mod graph;
mod kb;
mod relation;

pub use check::{
    check_closure_cc, check_equivalence_rule, check_generalized_loop, check_loop, check_or,
    RuleName, RuleViolation, SequentIdx,
};
pub use entail::{entail_cc, validate_derivation, Derivation, EntailError, Entailment};
pub use kb::{parse_kb, KbError};
pub use relation::ConsequenceRelation;
