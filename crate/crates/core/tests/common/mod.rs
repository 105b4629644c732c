//! Shared test machinery: a seeded random-model generator and brute-force
//! oracles kept independent of the library's production paths.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use concept_nmr::fca::{Concept, FormalContext};
use concept_nmr::logic::PolarityModel;
use concept_nmr::nmr::{PointedModel, PreferenceModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefMode {
    /// Any pairs, cycles included.
    Arbitrary,
    /// Pairs respect a random topological order: always smooth.
    Acyclic,
    /// An acyclic relation closed transitively: a strict partial order.
    StrictOrder,
}

#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub max_states: usize,
    pub max_vars: usize,
    pub max_dim: usize,
    pub mode: PrefMode,
    pub two_bases: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            max_states: 4,
            max_vars: 3,
            max_dim: 4,
            mode: PrefMode::Arbitrary,
            two_bases: false,
        }
    }
}

pub fn random_context(rng: &mut ChaCha8Rng, max_dim: usize) -> FormalContext {
    let m = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_dim);
    let objects: Vec<String> = (1..=m).map(|i| format!("o{i}")).collect();
    let attributes: Vec<String> = (1..=n).map(|j| format!("m{j}")).collect();
    let incidence: Vec<Vec<bool>> = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    FormalContext::new(objects, attributes, incidence).unwrap()
}

fn random_stable_concept(rng: &mut ChaCha8Rng, ctx: &FormalContext) -> Concept {
    let seed: BTreeSet<usize> = (0..ctx.object_count())
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    ctx.close_extent(&seed)
}

fn random_base(
    rng: &mut ChaCha8Rng,
    variables: &[String],
    max_dim: usize,
) -> Arc<PolarityModel> {
    let ctx = random_context(rng, max_dim);
    let valuation: BTreeMap<String, Concept> = variables
        .iter()
        .map(|v| (v.clone(), random_stable_concept(rng, &ctx)))
        .collect();
    Arc::new(PolarityModel::new(ctx, valuation).unwrap())
}

/// Deterministic random preference model for a seed.
pub fn random_model(seed: u64, cfg: &GenConfig) -> PreferenceModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=cfg.max_vars);
    let variables: Vec<String> = (1..=k).map(|i| format!("p{i}")).collect();

    let mut bases = vec![random_base(&mut rng, &variables, cfg.max_dim)];
    if cfg.two_bases && rng.gen_bool(0.5) {
        bases.push(random_base(&mut rng, &variables, cfg.max_dim));
    }

    let state_count = rng.gen_range(1..=cfg.max_states);
    let states: Vec<String> = (1..=state_count).map(|i| format!("t{i}")).collect();
    let labels: Vec<Vec<PointedModel>> = (0..state_count)
        .map(|_| {
            let size = rng.gen_range(1..=2);
            (0..size)
                .map(|_| {
                    let base = bases[rng.gen_range(0..bases.len())].clone();
                    let point = rng.gen_range(0..base.context().object_count());
                    PointedModel::new(base, point)
                })
                .collect()
        })
        .collect();

    let mut pref: BTreeSet<(usize, usize)> = BTreeSet::new();
    match cfg.mode {
        PrefMode::Arbitrary => {
            for s in 0..state_count {
                for t in 0..state_count {
                    if s != t && rng.gen_bool(0.3) {
                        pref.insert((s, t));
                    }
                }
            }
            // a rare reflexive pair keeps the raw-relation path honest
            if state_count > 0 && rng.gen_bool(0.05) {
                let s = rng.gen_range(0..state_count);
                pref.insert((s, s));
            }
        }
        PrefMode::Acyclic | PrefMode::StrictOrder => {
            let mut order: Vec<usize> = (0..state_count).collect();
            order.shuffle(&mut rng);
            for i in 0..state_count {
                for j in i + 1..state_count {
                    if rng.gen_bool(0.4) {
                        pref.insert((order[i], order[j]));
                    }
                }
            }
            if cfg.mode == PrefMode::StrictOrder {
                // transitive closure of an acyclic relation
                loop {
                    let mut grew = false;
                    let snapshot: Vec<_> = pref.iter().copied().collect();
                    for &(a, b) in &snapshot {
                        for &(b2, c) in &snapshot {
                            if b2 == b && pref.insert((a, c)) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
            }
        }
    }

    PreferenceModel::new(variables, states, labels, pref).unwrap()
}

/// Exhaustive oracle: all Galois-stable (extent, intent) pairs by closing
/// every attribute subset. Independent of the production lattice builder.
pub fn brute_force_concepts(ctx: &FormalContext) -> BTreeSet<Concept> {
    let n = ctx.attribute_count();
    assert!(n <= 16, "oracle is exponential in the attribute count");
    let mut out = BTreeSet::new();
    for bits in 0u32..(1 << n) {
        let subset: BTreeSet<usize> = (0..n).filter(|j| bits >> j & 1 == 1).collect();
        let extent = ctx.down(&subset);
        let intent = ctx.up(&extent);
        out.insert(Concept { extent, intent });
    }
    out
}
