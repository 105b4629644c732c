//! Canonical model construction.
//!
//! Mutually defeasible formulas are collapsed into equivalence classes;
//! classes ordered by the induced class order become the states of a new
//! preference model whose labels are normal pointed models for the class.
//! The round trip is verified by comparing consequence relations.

mod build;
mod classes;
mod search;

pub use build::{
    build_canonical, harvest_normal, verify_representation, BuildOptions, CanonicalError,
    CanonicalModel, ClassInfo, LabelMode, Verification,
};
pub use classes::{class_order, equiv_classes, ClassOrder, EquivClass};
pub use search::{search_supernormal, SearchBounds, SearchOutcome};
