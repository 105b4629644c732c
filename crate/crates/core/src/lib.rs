//! Defeasible reasoning on formal concepts.
//!
//! The crate builds concept lattices from formal contexts (`fca`), evaluates
//! lattice-based propositional formulas on polarity-based models (`logic`),
//! computes the defeasible consequence relation induced by preference-ordered
//! state models (`nmr`), checks closure under the cumulative rule systems CC
//! and CCL (`rules`), and constructs canonical models realizing a given
//! consequence relation (`canonical`). The `cli` module backs the
//! `concept-nmr` binary.

pub mod canonical;
pub mod cli;
pub mod fca;
pub mod logic;
pub mod nmr;
pub mod rules;

pub use fca::{Concept, ConceptLattice, ContextError, FormalContext};
pub use logic::{Formula, PolarityModel, Sequent, SequentKind, Universe};
pub use nmr::{ModelClass, PointedModel, PreferenceModel};
pub use rules::{ConsequenceRelation, RuleViolation};

#[cfg(test)]
pub(crate) mod test_support;
