//! Preference models over states and the defeasible consequence relation.
//!
//! States are labeled by nonempty sets of pointed polarity-based models; a
//! binary preference relation `≺` picks out the more typical states. A
//! defeasible sequent `φ |~ ψ` holds when every `≺`-minimal state whose
//! labels all satisfy `φ` also has all labels satisfying `ψ`.

mod classify;
mod model;
mod spec_file;

pub use classify::{classify, ModelClass, NonSmoothWitness, OrderDefect, StrongDefect};
pub(crate) use model::collect_label_models;
pub use model::{
    combine_preferences, consequence_table, is_minimum, is_smooth, minimal_states,
    ConsequenceVerdict, Harvest, NmrError, PointedModel, PreferenceModel, Smoothness,
};
pub use spec_file::{
    model_from_spec, model_to_spec, parse_model_spec, render_model_spec, ClassMetadata,
    ContextSpec, LabelSpec, ModelMetadata, ModelSpec, SpecError, StateSpec, ValuationSpec,
};
