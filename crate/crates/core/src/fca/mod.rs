//! Formal contexts, derivation operators, and concept lattices.
//!
//! A formal context (polarity) is a set of objects, a set of attributes, and
//! an incidence relation between them. The derivation operators `up` and
//! `down` form a Galois connection whose stable pairs are the formal
//! concepts; ordered by extent inclusion they form a complete lattice.

mod context;
mod cxt;
mod lattice;

pub use context::{ContextError, FormalContext};
pub use cxt::{parse_cxt, read_cxt_file, write_cxt, CxtError};
pub use lattice::{leq, Concept, ConceptLattice};
