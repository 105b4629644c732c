//! The JSON model-spec format.
//!
//! A spec declares variables, base contexts (inline rows of `.`/`X` or a
//! `.cxt` file reference), valuations given by extents (intents are
//! recomputed and stability is verified), states labeled by
//! (context, valuation, point) triples, and the preference relation as
//! `[s, t]` pairs. Emission is canonical pretty JSON, so parse→render is a
//! byte-level fixpoint on canonically formatted files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fca::{read_cxt_file, Concept, CxtError, FormalContext};
use crate::logic::{LogicError, PolarityModel};

use super::model::{NmrError, PointedModel, PreferenceModel};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid model spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("context `{name}`: give either `file` or inline objects/attributes/incidence")]
    ContextShape { name: String },
    #[error("context `{0}` declared twice")]
    DuplicateContext(String),
    #[error("valuation `{0}` declared twice")]
    DuplicateValuation(String),
    #[error("unknown context `{0}`")]
    UnknownContext(String),
    #[error("unknown valuation `{0}`")]
    UnknownValuation(String),
    #[error("state `{state}`: valuation `{valuation}` is over context `{expected}`, not `{found}`")]
    ContextMismatch {
        state: String,
        valuation: String,
        expected: String,
        found: String,
    },
    #[error("context `{context}`: {rows} incidence rows for {expected} objects")]
    RowCount {
        context: String,
        rows: usize,
        expected: usize,
    },
    #[error("context `{context}`: incidence row {row} has {cols} characters, expected {expected}")]
    RowWidth {
        context: String,
        row: usize,
        cols: usize,
        expected: usize,
    },
    #[error("context `{context}`: invalid incidence character `{ch}`")]
    BadIncidence { context: String, ch: char },
    #[error("valuation `{valuation}`: variable `{var}` has a non-stable extent: it closes to {{{closed}}}")]
    UnstableExtent {
        valuation: String,
        var: String,
        closed: String,
    },
    #[error("valuation `{valuation}`: {missing} of the declared variables are unassigned")]
    MissingAssignment { valuation: String, missing: String },
    #[error("valuation `{valuation}` assigns undeclared variable `{var}`")]
    UndeclaredVariable { valuation: String, var: String },
    #[error("state `{state}`: unknown point `{point}`")]
    UnknownPoint { state: String, point: String },
    #[error("preference pair references unknown state `{0}`")]
    UnknownPrefState(String),
    #[error(transparent)]
    Cxt(#[from] CxtError),
    #[error(transparent)]
    Context(#[from] crate::fca::ContextError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Model(#[from] NmrError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attributes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtentSpec {
    pub extent: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationSpec {
    pub name: String,
    pub context: String,
    pub assign: BTreeMap<String, ExtentSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSpec {
    pub context: String,
    pub valuation: String,
    pub point: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpec {
    pub name: String,
    pub label: Vec<LabelSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMetadata {
    pub state: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMetadata {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub classes: Vec<ClassMetadata>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub variables: Vec<String>,
    pub contexts: Vec<ContextSpec>,
    pub valuations: Vec<ValuationSpec>,
    pub states: Vec<StateSpec>,
    pub pref: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<ModelMetadata>,
}

pub fn parse_model_spec(text: &str) -> Result<ModelSpec, SpecError> {
    Ok(serde_json::from_str(text)?)
}

/// Canonical rendering: two-space pretty JSON plus a trailing newline.
pub fn render_model_spec(spec: &ModelSpec) -> String {
    let mut out = serde_json::to_string_pretty(spec).expect("spec serialization cannot fail");
    out.push('\n');
    out
}

fn resolve_context(spec: &ContextSpec, base_dir: &Path) -> Result<FormalContext, SpecError> {
    match (&spec.file, &spec.objects, &spec.attributes, &spec.incidence) {
        (Some(file), None, None, None) => Ok(read_cxt_file(&base_dir.join(file))?),
        (None, Some(objects), Some(attributes), Some(rows)) => {
            if rows.len() != objects.len() {
                return Err(SpecError::RowCount {
                    context: spec.name.clone(),
                    rows: rows.len(),
                    expected: objects.len(),
                });
            }
            let mut incidence = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                if row.chars().count() != attributes.len() {
                    return Err(SpecError::RowWidth {
                        context: spec.name.clone(),
                        row: i,
                        cols: row.chars().count(),
                        expected: attributes.len(),
                    });
                }
                let mut bits = Vec::with_capacity(attributes.len());
                for ch in row.chars() {
                    match ch {
                        'X' => bits.push(true),
                        '.' => bits.push(false),
                        ch => {
                            return Err(SpecError::BadIncidence {
                                context: spec.name.clone(),
                                ch,
                            })
                        }
                    }
                }
                incidence.push(bits);
            }
            Ok(FormalContext::new(
                objects.clone(),
                attributes.clone(),
                incidence,
            )?)
        }
        _ => Err(SpecError::ContextShape {
            name: spec.name.clone(),
        }),
    }
}

/// Resolves a spec into a preference model. `base_dir` anchors `.cxt` file
/// references. Non-stable extents are rejected with the offending variable.
pub fn model_from_spec(spec: &ModelSpec, base_dir: &Path) -> Result<PreferenceModel, SpecError> {
    let mut contexts: BTreeMap<String, FormalContext> = BTreeMap::new();
    for c in &spec.contexts {
        if contexts.contains_key(&c.name) {
            return Err(SpecError::DuplicateContext(c.name.clone()));
        }
        contexts.insert(c.name.clone(), resolve_context(c, base_dir)?);
    }

    let declared: BTreeSet<&String> = spec.variables.iter().collect();
    let mut valuations: BTreeMap<String, (String, Arc<PolarityModel>)> = BTreeMap::new();
    for v in &spec.valuations {
        if valuations.contains_key(&v.name) {
            return Err(SpecError::DuplicateValuation(v.name.clone()));
        }
        let ctx = contexts
            .get(&v.context)
            .ok_or_else(|| SpecError::UnknownContext(v.context.clone()))?;
        for var in v.assign.keys() {
            if !declared.contains(var) {
                return Err(SpecError::UndeclaredVariable {
                    valuation: v.name.clone(),
                    var: var.clone(),
                });
            }
        }
        let missing: Vec<&str> = spec
            .variables
            .iter()
            .filter(|var| !v.assign.contains_key(*var))
            .map(|s| s.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(SpecError::MissingAssignment {
                valuation: v.name.clone(),
                missing: missing.join(", "),
            });
        }
        let mut map: BTreeMap<String, Concept> = BTreeMap::new();
        for (var, e) in &v.assign {
            let extent = ctx.object_set(&e.extent.iter().map(|s| s.as_str()).collect::<Vec<_>>())?;
            let intent = ctx.up(&extent);
            let candidate = Concept {
                extent: extent.clone(),
                intent,
            };
            if !candidate.is_stable(ctx) {
                let closed = ctx.close_extent(&extent);
                return Err(SpecError::UnstableExtent {
                    valuation: v.name.clone(),
                    var: var.clone(),
                    closed: closed.extent_names(ctx).join(", "),
                });
            }
            map.insert(var.clone(), candidate);
        }
        let model = Arc::new(PolarityModel::new(ctx.clone(), map)?);
        valuations.insert(v.name.clone(), (v.context.clone(), model));
    }

    let mut states = Vec::new();
    let mut labels = Vec::new();
    for s in &spec.states {
        let mut label = Vec::new();
        for l in &s.label {
            let (ctx_name, model) = valuations
                .get(&l.valuation)
                .ok_or_else(|| SpecError::UnknownValuation(l.valuation.clone()))?;
            if !contexts.contains_key(&l.context) {
                return Err(SpecError::UnknownContext(l.context.clone()));
            }
            if ctx_name != &l.context {
                return Err(SpecError::ContextMismatch {
                    state: s.name.clone(),
                    valuation: l.valuation.clone(),
                    expected: ctx_name.clone(),
                    found: l.context.clone(),
                });
            }
            let point = model
                .context()
                .object_index(&l.point)
                .map_err(|_| SpecError::UnknownPoint {
                    state: s.name.clone(),
                    point: l.point.clone(),
                })?;
            label.push(PointedModel::new(model.clone(), point));
        }
        states.push(s.name.clone());
        labels.push(label);
    }

    let index_of = |name: &str| -> Result<usize, SpecError> {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| SpecError::UnknownPrefState(name.to_string()))
    };
    let mut pref = BTreeSet::new();
    for [s, t] in &spec.pref {
        pref.insert((index_of(s)?, index_of(t)?));
    }

    Ok(PreferenceModel::new(
        spec.variables.clone(),
        states,
        labels,
        pref,
    )?)
}

/// Exports a model as an inline spec. Contexts are named `ctx1`, `ctx2`, …
/// in first-occurrence order; each distinct base model becomes one
/// context/valuation pair.
pub fn model_to_spec(m: &PreferenceModel, metadata: Option<ModelMetadata>) -> ModelSpec {
    let bases = m.distinct_bases();
    let mut contexts = Vec::new();
    let mut valuations = Vec::new();
    for (i, base) in bases.iter().enumerate() {
        let ctx = base.context();
        let rows: Vec<String> = ctx
            .incidence_rows()
            .iter()
            .map(|row| row.iter().map(|&b| if b { 'X' } else { '.' }).collect())
            .collect();
        contexts.push(ContextSpec {
            name: format!("ctx{}", i + 1),
            file: None,
            objects: Some(ctx.objects().to_vec()),
            attributes: Some(ctx.attributes().to_vec()),
            incidence: Some(rows),
        });
        let assign: BTreeMap<String, ExtentSpec> = base
            .valuation()
            .iter()
            .map(|(var, concept)| {
                (
                    var.clone(),
                    ExtentSpec {
                        extent: concept.extent_names(ctx),
                    },
                )
            })
            .collect();
        valuations.push(ValuationSpec {
            name: format!("v{}", i + 1),
            context: format!("ctx{}", i + 1),
            assign,
        });
    }

    let base_name = |pm: &PointedModel| -> (String, String) {
        let idx = bases
            .iter()
            .position(|b| Arc::ptr_eq(b, pm.base()) || **b == **pm.base())
            .expect("label base must be a distinct base");
        (format!("ctx{}", idx + 1), format!("v{}", idx + 1))
    };

    let states: Vec<StateSpec> = (0..m.state_count())
        .map(|s| StateSpec {
            name: m.state_name(s).to_string(),
            label: m
                .label(s)
                .iter()
                .map(|pm| {
                    let (context, valuation) = base_name(pm);
                    LabelSpec {
                        context,
                        valuation,
                        point: pm.point_name().to_string(),
                    }
                })
                .collect(),
        })
        .collect();

    let pref: Vec<[String; 2]> = m
        .pref()
        .iter()
        .map(|&(s, t)| {
            [
                m.state_name(s).to_string(),
                m.state_name(t).to_string(),
            ]
        })
        .collect();

    ModelSpec {
        variables: m.variables().to_vec(),
        contexts,
        valuations,
        states,
        pref,
        metadata,
    }
}
