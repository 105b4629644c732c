use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::fca::{Concept, FormalContext};
use crate::logic::{Formula, LogicError, PolarityModel};
use crate::nmr::{
    collect_label_models, minimal_states, Harvest, NmrError, PointedModel, PreferenceModel,
};
use crate::rules::{graph, ConsequenceRelation};

use super::classes::{class_order, equiv_classes};
use super::search::{search_supernormal, SearchBounds, SearchOutcome};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("relation is not closed under the cumulative rules: {0}")]
    NotClosed(String),
    #[error("class order is not antisymmetric between `{a}` and `{b}`")]
    OrderNotAntisymmetric { a: String, b: String },
    #[error("class `{0}` has a nonempty extension with no minimal states; no normal models can be harvested")]
    EmptyClassLabel(String),
    #[error("canonical preference is not asymmetric")]
    AsymmetricityViolated,
    #[error("search space of about {estimate} candidates exceeds the ceiling of {ceiling}")]
    SearchSpaceTooLarge { estimate: u64, ceiling: u64 },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Model(#[from] NmrError),
}

/// Collects the pointed models labeling the minimal states of `f`-hat.
///
/// Every harvested model satisfies each universe consequence of `f`; when
/// the hat is empty the harvest is empty and flagged vacuous, and when the
/// hat is nonempty but has no minimal states the non-smoothness is flagged.
pub fn harvest_normal(m: &PreferenceModel, f: &Formula) -> Result<Harvest, LogicError> {
    let hat = m.hat(f)?;
    let minimal = minimal_states(&hat, m.pref());
    Ok(Harvest {
        models: collect_label_models(m, &minimal),
        vacuous: hat.is_empty(),
        non_smooth: !hat.is_empty() && minimal.is_empty(),
    })
}

/// How canonical states get their labels.
#[derive(Debug, Clone)]
pub enum LabelMode {
    /// Normal models harvested from the source model's minimal states.
    Harvested,
    /// One supernormal model per class found by bounded search, falling
    /// back to the harvest (with a warning) when the search fails.
    Supernormal(SearchBounds),
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub close_transitively: bool,
    pub labels: LabelMode,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            close_transitively: false,
            labels: LabelMode::Harvested,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub state: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CanonicalModel {
    pub model: PreferenceModel,
    pub classes: Vec<ClassInfo>,
    pub warnings: Vec<String>,
}

/// A 1×1 full context whose single point satisfies every formula; the label
/// of last resort for classes whose consequences are the whole universe.
fn universal_model(variables: &[String]) -> PointedModel {
    let ctx = FormalContext::new(
        vec!["u1".to_string()],
        vec!["w1".to_string()],
        vec![vec![true]],
    )
    .expect("static context is well-formed");
    let only = Concept {
        extent: ctx.all_objects(),
        intent: ctx.all_attributes(),
    };
    let valuation: BTreeMap<String, Concept> = variables
        .iter()
        .map(|v| (v.clone(), only.clone()))
        .collect();
    let base = PolarityModel::new(ctx, valuation).expect("full context concept is stable");
    PointedModel::new(Arc::new(base), 0)
}

/// Builds the canonical model of a consequence relation: states are the
/// equivalence classes, labels are normal models for the class
/// representative, and the preference is the strict class order (optionally
/// transitively closed).
///
/// `r` is expected to be the consequence table of `m`; adequacy of the
/// harvested label supply is not assumed but checked downstream by
/// [`verify_representation`].
pub fn build_canonical(
    r: &ConsequenceRelation,
    m: &PreferenceModel,
    options: &BuildOptions,
) -> Result<CanonicalModel, CanonicalError> {
    let classes = equiv_classes(r)?;
    let order = class_order(&classes, r)?;
    let mut warnings = Vec::new();

    let mut states = Vec::new();
    let mut labels: Vec<Vec<PointedModel>> = Vec::new();
    let mut infos = Vec::new();
    for class in &classes {
        let rep = r.rep(class.representative);
        let state_name = rep.to_string();

        let harvest = harvest_normal(m, rep)?;
        let consequences: Vec<usize> = (0..r.universe().len())
            .filter(|&j| r.holds_defeasible(class.representative, j))
            .collect();

        let mut label = match &options.labels {
            LabelMode::Harvested => harvest.models.clone(),
            LabelMode::Supernormal(bounds) => {
                let gamma: Vec<Formula> = consequences
                    .iter()
                    .map(|&j| r.rep(j).clone())
                    .collect();
                let delta: Vec<Formula> = (0..r.universe().len())
                    .filter(|j| !consequences.contains(j))
                    .map(|j| r.rep(j).clone())
                    .collect();
                match search_supernormal(m.variables(), &gamma, &delta, bounds)? {
                    SearchOutcome::Found(pm) => vec![pm],
                    SearchOutcome::NotFound { examined } => {
                        warnings.push(format!(
                            "no supernormal model for `{state_name}` within {}x{} \
                             ({examined} candidates); falling back to harvested normal models",
                            bounds.max_objects, bounds.max_attributes
                        ));
                        harvest.models.clone()
                    }
                }
            }
        };

        if label.is_empty() {
            if harvest.non_smooth {
                return Err(CanonicalError::EmptyClassLabel(state_name));
            }
            // the class holds nowhere in the source model, so it entails
            // everything; the universal point is normal for it
            label = vec![universal_model(m.variables())];
        }

        states.push(state_name.clone());
        labels.push(label);
        infos.push(ClassInfo {
            state: state_name,
            members: class
                .members
                .iter()
                .map(|&i| r.rep(i).to_string())
                .collect(),
        });
    }

    let mut pref = order.strict.clone();
    if options.close_transitively {
        pref = graph::transitive_closure(classes.len(), &pref);
    }
    for &(s, t) in &pref {
        if pref.contains(&(t, s)) {
            return Err(CanonicalError::AsymmetricityViolated);
        }
    }

    let model = PreferenceModel::new(m.variables().to_vec(), states, labels, pref)?;
    Ok(CanonicalModel {
        model,
        classes: infos,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub equal: bool,
    /// First differing pair: (lhs, rhs, holds in source, holds in candidate).
    pub mismatch: Option<(String, String, bool, bool)>,
}

/// Compares the defeasible consequence relations of two models over the
/// source model's universe representatives, reporting the first mismatch.
pub fn verify_representation(
    source: &PreferenceModel,
    candidate: &PreferenceModel,
) -> Result<Verification, LogicError> {
    let universe = source.universe(None)?;
    for i in 0..universe.len() {
        for j in 0..universe.len() {
            let f = universe.rep(i);
            let g = universe.rep(j);
            let a = source.consequence(f, g)?;
            let b = candidate.consequence(f, g)?;
            if a != b {
                return Ok(Verification {
                    equal: false,
                    mismatch: Some((f.to_string(), g.to_string(), a, b)),
                });
            }
        }
    }
    Ok(Verification {
        equal: true,
        mismatch: None,
    })
}
