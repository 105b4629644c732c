//! Shared fixtures for unit tests: the animals scenario used across modules.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::fca::{Concept, FormalContext};
use crate::logic::PolarityModel;
use crate::nmr::{PointedModel, PreferenceModel};

pub fn animals() -> FormalContext {
    FormalContext::from_pairs(
        vec!["a1".into(), "a2".into(), "a3".into(), "a4".into()],
        vec![
            "x1".into(),
            "x2".into(),
            "x3".into(),
            "x4".into(),
            "x5".into(),
        ],
        &[
            ("a1", "x1"),
            ("a1", "x3"),
            ("a1", "x5"),
            ("a2", "x1"),
            ("a2", "x2"),
            ("a2", "x5"),
            ("a3", "x3"),
            ("a3", "x4"),
            ("a3", "x5"),
            ("a4", "x2"),
            ("a4", "x4"),
        ],
    )
    .unwrap()
}

pub fn concept_of(ctx: &FormalContext, objects: &[&str]) -> Concept {
    ctx.close_extent(&ctx.object_set(objects).unwrap())
}

pub fn animal_valuation(ctx: &FormalContext) -> BTreeMap<String, Concept> {
    [
        ("C1", vec!["a1", "a2"]),
        ("C2", vec!["a2", "a4"]),
        ("C3", vec!["a1", "a3"]),
        ("C4", vec!["a3", "a4"]),
        ("C5", vec!["a1", "a2", "a3"]),
    ]
    .into_iter()
    .map(|(var, extent)| (var.to_string(), concept_of(ctx, &extent)))
    .collect()
}

pub fn animal_model() -> PolarityModel {
    let ctx = animals();
    let val = animal_valuation(&ctx);
    PolarityModel::new(ctx, val).unwrap()
}

pub fn animal_variables() -> Vec<String> {
    vec![
        "C1".into(),
        "C2".into(),
        "C3".into(),
        "C4".into(),
        "C5".into(),
    ]
}

fn preference_model_with(pref: &[(usize, usize)]) -> PreferenceModel {
    let base = Arc::new(animal_model());
    let states: Vec<String> = (1..=4).map(|i| format!("s{i}")).collect();
    let labels: Vec<Vec<PointedModel>> = (0..4)
        .map(|i| vec![PointedModel::new(base.clone(), i)])
        .collect();
    PreferenceModel::new(
        animal_variables(),
        states,
        labels,
        pref.iter().copied().collect::<BTreeSet<_>>(),
    )
    .unwrap()
}

/// The single-agent scenario: platypus (s1) less typical than the others.
pub fn model_m() -> PreferenceModel {
    preference_model_with(&[(1, 0), (2, 0), (3, 0)])
}

/// The two-agent scenario, combined preference as displayed: three pairs.
pub fn model_mprime_literal() -> PreferenceModel {
    preference_model_with(&[(3, 2), (1, 3), (2, 1)])
}

/// The two-agent scenario under the full combination rule: six pairs.
pub fn model_mprime_derived() -> PreferenceModel {
    preference_model_with(&[(1, 0), (2, 0), (3, 0), (2, 1), (1, 3), (3, 2)])
}

pub fn agent_a_pref() -> BTreeSet<(usize, usize)> {
    [(1, 0), (2, 0), (3, 0), (1, 3), (3, 2), (1, 2)]
        .into_iter()
        .collect()
}

pub fn agent_b_pref() -> BTreeSet<(usize, usize)> {
    [(1, 0), (2, 0), (3, 0), (2, 1)].into_iter().collect()
}
