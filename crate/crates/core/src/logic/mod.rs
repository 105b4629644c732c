//! The lattice-based propositional language and its polarity-based semantics.
//!
//! Formulas are built from variables, `top`, `bot`, meet (`&`) and join
//! (`|`); there is no negation or implication. A polarity-based model
//! interprets every variable as a formal concept of its context, and the
//! interpretation map extends homomorphically: `&` is concept meet, `|` is
//! concept join. Satisfaction is membership of an object in the extent of
//! the interpretation, co-satisfaction membership of an attribute in the
//! intent.

mod ast;
mod model;
mod parse;
mod universe;

pub use ast::{Formula, Sequent, SequentKind};
pub use model::{LogicError, PolarityModel};
pub use parse::{parse_formula, parse_sequent, ParseError};
pub use universe::{generated_sublattice, Universe, UniverseElement};
