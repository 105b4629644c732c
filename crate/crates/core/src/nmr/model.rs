use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::logic::{Formula, LogicError, PolarityModel, Universe};
use crate::rules::ConsequenceRelation;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NmrError {
    #[error("a preference model needs at least one state")]
    NoStates,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("state `{0}` has an empty label")]
    EmptyLabel(String),
    #[error("state `{state}`: label valuation binds {found}, expected exactly the declared variables {expected}")]
    ValuationMismatch {
        state: String,
        found: String,
        expected: String,
    },
    #[error("preference pair references state index {0} out of range")]
    PrefOutOfRange(usize),
    #[error("state `{0}` is not a member of the given set")]
    StateNotInSet(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// A polarity-based model with one distinguished object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    base: Arc<PolarityModel>,
    point: usize,
}

impl PointedModel {
    pub fn new(base: Arc<PolarityModel>, point: usize) -> Self {
        assert!(
            point < base.context().object_count(),
            "pointed object out of range"
        );
        Self { base, point }
    }

    pub fn base(&self) -> &Arc<PolarityModel> {
        &self.base
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn point_name(&self) -> &str {
        self.base.context().object_name(self.point)
    }

    pub fn satisfies(&self, f: &Formula) -> Result<bool, LogicError> {
        self.base.satisfies_index(self.point, f)
    }
}

/// States, labels, and a preference relation.
///
/// `pref` is kept extensionally as raw pairs; no reflexive or transitive
/// normalization happens implicitly, since the model class depends on the
/// literal relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceModel {
    variables: Vec<String>,
    states: Vec<String>,
    labels: Vec<Vec<PointedModel>>,
    pref: BTreeSet<(usize, usize)>,
}

impl PreferenceModel {
    pub fn new(
        variables: Vec<String>,
        states: Vec<String>,
        labels: Vec<Vec<PointedModel>>,
        pref: BTreeSet<(usize, usize)>,
    ) -> Result<Self, NmrError> {
        if states.is_empty() {
            return Err(NmrError::NoStates);
        }
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.clone()) {
                return Err(NmrError::DuplicateState(s.clone()));
            }
        }
        assert_eq!(states.len(), labels.len(), "one label set per state");
        let declared: BTreeSet<&String> = variables.iter().collect();
        for (s, label) in states.iter().zip(&labels) {
            if label.is_empty() {
                return Err(NmrError::EmptyLabel(s.clone()));
            }
            for pm in label {
                let bound: BTreeSet<&String> = pm.base.valuation().keys().collect();
                if bound != declared {
                    return Err(NmrError::ValuationMismatch {
                        state: s.clone(),
                        found: bound
                            .iter()
                            .map(|v| v.as_str())
                            .collect::<Vec<_>>()
                            .join(", "),
                        expected: variables.join(", "),
                    });
                }
            }
        }
        for &(s, t) in &pref {
            if s >= states.len() {
                return Err(NmrError::PrefOutOfRange(s));
            }
            if t >= states.len() {
                return Err(NmrError::PrefOutOfRange(t));
            }
        }
        Ok(Self {
            variables,
            states,
            labels,
            pref,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, i: usize) -> &str {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Result<usize, NmrError> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| NmrError::UnknownState(name.to_string()))
    }

    pub fn label(&self, state: usize) -> &[PointedModel] {
        &self.labels[state]
    }

    pub fn pref(&self) -> &BTreeSet<(usize, usize)> {
        &self.pref
    }

    pub fn with_pref(&self, pref: BTreeSet<(usize, usize)>) -> Result<Self, NmrError> {
        Self::new(
            self.variables.clone(),
            self.states.clone(),
            self.labels.clone(),
            pref,
        )
    }

    /// Distinct base models appearing in labels, in first-occurrence order.
    pub fn distinct_bases(&self) -> Vec<Arc<PolarityModel>> {
        let mut out: Vec<Arc<PolarityModel>> = Vec::new();
        for label in &self.labels {
            for pm in label {
                if !out.iter().any(|b| Arc::ptr_eq(b, &pm.base) || **b == *pm.base) {
                    out.push(pm.base.clone());
                }
            }
        }
        out
    }

    pub fn universe(&self, cap: Option<usize>) -> Result<Universe, LogicError> {
        Universe::build(self.distinct_bases(), &self.variables, cap)
    }

    /// `s ⊨ f` iff every pointed model labeling `s` satisfies `f`.
    pub fn state_sat(&self, state: usize, f: &Formula) -> Result<bool, LogicError> {
        for pm in &self.labels[state] {
            if !pm.satisfies(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn state_sat_named(&self, state: &str, f: &Formula) -> Result<bool, NmrError> {
        let s = self.state_index(state)?;
        Ok(self.state_sat(s, f)?)
    }

    /// The states satisfying `f`.
    pub fn hat(&self, f: &Formula) -> Result<BTreeSet<usize>, LogicError> {
        (0..self.states.len())
            .filter_map(|s| match self.state_sat(s, f) {
                Ok(true) => Some(Ok(s)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    }

    /// Hat of a universe element, using precomputed interpretations.
    pub fn hat_element(&self, universe: &Universe, element: usize) -> BTreeSet<usize> {
        let interp = &universe.elements()[element].interp;
        (0..self.states.len())
            .filter(|&s| {
                self.labels[s].iter().all(|pm| {
                    let b = universe
                        .base_index(&pm.base)
                        .expect("label base model missing from universe");
                    interp[b].extent.contains(&pm.point)
                })
            })
            .collect()
    }

    /// `f |~ g`: every minimal state of f-hat lies in g-hat.
    pub fn consequence(&self, f: &Formula, g: &Formula) -> Result<bool, LogicError> {
        Ok(self.consequence_verdict(f, g)?.holds)
    }

    pub fn consequence_verdict(&self, f: &Formula, g: &Formula) -> Result<ConsequenceVerdict, LogicError> {
        let hat_f = self.hat(f)?;
        let hat_g = self.hat(g)?;
        let minimal = minimal_states(&hat_f, &self.pref);
        let offending: Vec<String> = minimal
            .iter()
            .filter(|s| !hat_g.contains(s))
            .map(|&s| self.states[s].clone())
            .collect();
        Ok(ConsequenceVerdict {
            holds: offending.is_empty(),
            vacuous: minimal.is_empty(),
            minimal: minimal.iter().map(|&s| self.states[s].clone()).collect(),
            offending,
        })
    }

    pub fn state_names(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&s| self.states[s].clone()).collect()
    }
}

/// Evidence attached to a defeasible verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceVerdict {
    pub holds: bool,
    pub minimal: Vec<String>,
    pub offending: Vec<String>,
    pub vacuous: bool,
}

/// Members of `p` with no `≺`-predecessor inside `p`.
///
/// On sets containing `≺`-cycles this can be empty; consequence stays
/// well-defined (vacuously true) and classification flags non-smoothness.
pub fn minimal_states(p: &BTreeSet<usize>, pref: &BTreeSet<(usize, usize)>) -> BTreeSet<usize> {
    p.iter()
        .copied()
        .filter(|&t| !p.iter().any(|&s| pref.contains(&(s, t))))
        .collect()
}

/// `t` is a minimum of `p` iff it precedes every other member.
pub fn is_minimum(
    p: &BTreeSet<usize>,
    pref: &BTreeSet<(usize, usize)>,
    t: usize,
) -> Result<bool, NmrError> {
    if !p.contains(&t) {
        return Err(NmrError::StateNotInSet(t.to_string()));
    }
    Ok(p.iter().all(|&s| s == t || pref.contains(&(t, s))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothness {
    pub smooth: bool,
    pub failing_state: Option<usize>,
}

/// Every member must be minimal or sit above a minimal member.
pub fn is_smooth(p: &BTreeSet<usize>, pref: &BTreeSet<(usize, usize)>) -> Smoothness {
    let minimal = minimal_states(p, pref);
    for &t in p {
        if minimal.contains(&t) {
            continue;
        }
        let covered = minimal.iter().any(|&s| pref.contains(&(s, t)));
        if !covered {
            return Smoothness {
                smooth: false,
                failing_state: Some(t),
            };
        }
    }
    Smoothness {
        smooth: true,
        failing_state: None,
    }
}

/// Combines two agents' preferences: `(s, t)` survives iff `s ≺_B t`, or
/// `s ≺_A t` and `t ⊀_B s`. Every pair of `b` is kept.
pub fn combine_preferences(
    a: &BTreeSet<(usize, usize)>,
    b: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let mut out: BTreeSet<(usize, usize)> = b.clone();
    for &(s, t) in a {
        if !b.contains(&(t, s)) {
            out.insert((s, t));
        }
    }
    out
}

/// Materializes the consequence relation over the finite universe: the
/// defeasible part from minimal-state inclusion, the strict part from the
/// pointwise lattice order over the label base models.
pub fn consequence_table(
    m: &PreferenceModel,
    cap: Option<usize>,
) -> Result<ConsequenceRelation, LogicError> {
    let universe = m.universe(cap)?;
    let n = universe.len();
    let hats: Vec<BTreeSet<usize>> = (0..n).map(|e| m.hat_element(&universe, e)).collect();
    let mins: Vec<BTreeSet<usize>> = hats.iter().map(|h| minimal_states(h, m.pref())).collect();
    let mut defeasible = BTreeSet::new();
    for (i, min_i) in mins.iter().enumerate() {
        for (j, hat_j) in hats.iter().enumerate() {
            if min_i.is_subset(hat_j) {
                defeasible.insert((i, j));
            }
        }
    }
    Ok(ConsequenceRelation::new(universe, defeasible))
}

/// Deduplicated pointed models of the given states, in label order.
pub(crate) fn collect_label_models(
    m: &PreferenceModel,
    states: &BTreeSet<usize>,
) -> Vec<PointedModel> {
    let mut out: Vec<PointedModel> = Vec::new();
    for &s in states {
        for pm in m.label(s) {
            if !out.iter().any(|q| q == pm) {
                out.push(pm.clone());
            }
        }
    }
    out
}

/// Outcome of harvesting normal models from the minimal states of a hat.
#[derive(Debug, Clone)]
pub struct Harvest {
    pub models: Vec<PointedModel>,
    /// The hat itself was empty (the formula holds nowhere).
    pub vacuous: bool,
    /// The hat was nonempty but had no minimal states (a smoothness failure).
    pub non_smooth: bool,
}
