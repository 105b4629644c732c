use serde::Serialize;

use crate::rules::graph::sccs;

use super::model::{is_minimum, is_smooth, minimal_states, NmrError, PreferenceModel};

/// Where a classification flag failed, with enough detail to re-run the
/// underlying check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSmoothWitness {
    pub formula: String,
    pub state: String,
    /// States of a preference cycle inside the failing hat, sorted.
    pub cycle: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OrderDefect {
    Reflexive { state: String },
    NotTransitive { a: String, b: String, c: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum StrongDefect {
    Symmetric { s: String, t: String },
    NoMinimum { formula: String, minimal: Vec<String> },
}

/// Model-class report: smoothness of every hat (cumulative), strict partial
/// order (ordered), singleton labels (preferential), and asymmetry plus
/// minimum existence (strong).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelClass {
    pub is_cumulative: bool,
    pub non_smooth: Option<NonSmoothWitness>,
    pub is_ordered: bool,
    pub order_defect: Option<OrderDefect>,
    pub is_preferential: bool,
    pub non_singleton_state: Option<String>,
    pub is_strong: bool,
    pub strong_defect: Option<StrongDefect>,
    pub universe_size: usize,
    pub note: String,
}

/// Decides the flags finitely: formulas with identical interpretations in
/// every labeled base model have identical hats, so one representative per
/// element of the generated universe is exhaustive.
pub fn classify(m: &PreferenceModel) -> Result<ModelClass, NmrError> {
    let universe = m.universe(None)?;
    let pref = m.pref();

    let mut non_smooth = None;
    for e in 0..universe.len() {
        let hat = m.hat_element(&universe, e);
        let report = is_smooth(&hat, pref);
        if let Some(state) = report.failing_state {
            // the obstruction is a preference cycle inside the hat
            let restricted: std::collections::BTreeSet<(usize, usize)> = pref
                .iter()
                .copied()
                .filter(|(s, t)| hat.contains(s) && hat.contains(t))
                .collect();
            let mut cycle: Vec<String> = sccs(m.state_count(), &restricted)
                .into_iter()
                .filter(|c| {
                    c.len() > 1 || (c.len() == 1 && restricted.contains(&(c[0], c[0])))
                })
                .flatten()
                .map(|s| m.state_name(s).to_string())
                .collect();
            cycle.sort();
            non_smooth = Some(NonSmoothWitness {
                formula: universe.rep(e).to_string(),
                state: m.state_name(state).to_string(),
                cycle,
            });
            break;
        }
    }

    let mut order_defect = None;
    'order: for s in 0..m.state_count() {
        if pref.contains(&(s, s)) {
            order_defect = Some(OrderDefect::Reflexive {
                state: m.state_name(s).to_string(),
            });
            break 'order;
        }
    }
    if order_defect.is_none() {
        'transitive: for &(a, b) in pref {
            for &(b2, c) in pref {
                if b2 == b && !pref.contains(&(a, c)) {
                    order_defect = Some(OrderDefect::NotTransitive {
                        a: m.state_name(a).to_string(),
                        b: m.state_name(b).to_string(),
                        c: m.state_name(c).to_string(),
                    });
                    break 'transitive;
                }
            }
        }
    }

    let non_singleton_state = (0..m.state_count())
        .find(|&s| m.label(s).len() != 1)
        .map(|s| m.state_name(s).to_string());

    let mut strong_defect = None;
    for &(s, t) in pref {
        if pref.contains(&(t, s)) {
            strong_defect = Some(StrongDefect::Symmetric {
                s: m.state_name(s).to_string(),
                t: m.state_name(t).to_string(),
            });
            break;
        }
    }
    if strong_defect.is_none() {
        for e in 0..universe.len() {
            let hat = m.hat_element(&universe, e);
            if hat.is_empty() {
                continue; // nothing to have a minimum of
            }
            let minimal = minimal_states(&hat, pref);
            let has_minimum = minimal.len() == 1
                && is_minimum(&hat, pref, *minimal.iter().next().unwrap()).unwrap_or(false);
            if !has_minimum {
                strong_defect = Some(StrongDefect::NoMinimum {
                    formula: universe.rep(e).to_string(),
                    minimal: m.state_names(&minimal),
                });
                break;
            }
        }
    }

    Ok(ModelClass {
        is_cumulative: non_smooth.is_none(),
        non_smooth,
        is_ordered: order_defect.is_none(),
        order_defect,
        is_preferential: non_singleton_state.is_none(),
        non_singleton_state,
        is_strong: strong_defect.is_none(),
        strong_defect,
        universe_size: universe.len(),
        note: format!(
            "smoothness and minimum existence checked on one representative per \
             interpretation tuple ({} elements over {} base model(s)); formulas with \
             identical interpretations in every labeled base model have identical hats",
            universe.len(),
            universe.bases().len()
        ),
    })
}
