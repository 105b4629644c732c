//! Bounded search for supernormal pointed models.
//!
//! Exhausts every context up to the given dimensions, every assignment of
//! stable concepts to the template variables, and every point, looking for
//! a pointed model that satisfies all of `gamma` and refutes all of
//! `delta`. `NotFound` means no model within the bounds, not nonexistence.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fca::{Concept, ConceptLattice, FormalContext};
use crate::logic::{Formula, PolarityModel};
use crate::nmr::PointedModel;

use super::build::CanonicalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_objects: usize,
    pub max_attributes: usize,
    /// Refuse outright when the candidate count estimate exceeds this.
    pub ceiling: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_objects: 3,
            max_attributes: 3,
            ceiling: 200_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(PointedModel),
    NotFound { examined: u64 },
}

/// Formula compiled against a fixed variable order.
enum Expr {
    Var(usize),
    Top,
    Bot,
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

fn compile(f: &Formula, vars: &[String]) -> Expr {
    match f {
        Formula::Top => Expr::Top,
        Formula::Bot => Expr::Bot,
        Formula::Var(name) => Expr::Var(
            vars.iter()
                .position(|v| v == name)
                .expect("search formulas range over the template variables"),
        ),
        Formula::And(l, r) => Expr::And(Box::new(compile(l, vars)), Box::new(compile(r, vars))),
        Formula::Or(l, r) => Expr::Or(Box::new(compile(l, vars)), Box::new(compile(r, vars))),
    }
}

fn eval(e: &Expr, ctx: &FormalContext, assignment: &[&Concept]) -> Concept {
    match e {
        Expr::Var(i) => (*assignment[*i]).clone(),
        Expr::Top => ctx.top_concept(),
        Expr::Bot => ctx.bottom_concept(),
        Expr::And(l, r) => {
            let l = eval(l, ctx, assignment);
            let r = eval(r, ctx, assignment);
            ctx.concept_meet(&l, &r)
        }
        Expr::Or(l, r) => {
            let l = eval(l, ctx, assignment);
            let r = eval(r, ctx, assignment);
            ctx.concept_join(&l, &r)
        }
    }
}

fn context_from_bits(m: usize, n: usize, bits: u64) -> FormalContext {
    let objects: Vec<String> = (1..=m).map(|i| format!("o{i}")).collect();
    let attributes: Vec<String> = (1..=n).map(|j| format!("m{j}")).collect();
    let incidence: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
        .collect();
    FormalContext::new(objects, attributes, incidence).expect("generated names are distinct")
}

/// Searches contexts in (objects, attributes, incidence) order, valuations
/// by odometer over the context's concepts, points in object order. The
/// first hit is returned, which makes the result deterministic.
pub fn search_supernormal(
    variables: &[String],
    gamma: &[Formula],
    delta: &[Formula],
    bounds: &SearchBounds,
) -> Result<SearchOutcome, CanonicalError> {
    let k = variables.len() as u32;

    // exact candidate count, with the per-context lattices cached for reuse
    let mut lattices: Vec<(usize, usize, u64, ConceptLattice)> = Vec::new();
    let mut estimate: u64 = 0;
    for m in 1..=bounds.max_objects {
        for n in 1..=bounds.max_attributes {
            for bits in 0u64..(1u64 << (m * n)) {
                let ctx = context_from_bits(m, n, bits);
                let lattice = ConceptLattice::build(&ctx);
                let valuations = (lattice.len() as u64).saturating_pow(k);
                estimate = estimate.saturating_add(valuations.saturating_mul(m as u64));
                lattices.push((m, n, bits, lattice));
                if estimate > bounds.ceiling {
                    return Err(CanonicalError::SearchSpaceTooLarge {
                        estimate,
                        ceiling: bounds.ceiling,
                    });
                }
            }
        }
    }

    let gamma_c: Vec<Expr> = gamma.iter().map(|f| compile(f, variables)).collect();
    let delta_c: Vec<Expr> = delta.iter().map(|f| compile(f, variables)).collect();

    let mut examined: u64 = 0;
    for (_, _, _, lattice) in &lattices {
        let ctx = lattice.context();
        let concepts = lattice.concepts();
        let mut odometer = vec![0usize; variables.len()];
        loop {
            let assignment: Vec<&Concept> = odometer.iter().map(|&i| &concepts[i]).collect();
            let gamma_ext: Vec<Concept> =
                gamma_c.iter().map(|e| eval(e, ctx, &assignment)).collect();
            let delta_ext: Vec<Concept> =
                delta_c.iter().map(|e| eval(e, ctx, &assignment)).collect();
            for point in 0..ctx.object_count() {
                examined += 1;
                let sat_all = gamma_ext.iter().all(|c| c.extent.contains(&point));
                let refute_all = delta_ext.iter().all(|c| !c.extent.contains(&point));
                if sat_all && refute_all {
                    let valuation: BTreeMap<String, Concept> = variables
                        .iter()
                        .zip(&assignment)
                        .map(|(v, c)| (v.clone(), (*c).clone()))
                        .collect();
                    let base = PolarityModel::new(ctx.clone(), valuation)
                        .expect("lattice concepts are stable");
                    return Ok(SearchOutcome::Found(PointedModel::new(
                        Arc::new(base),
                        point,
                    )));
                }
            }

            // advance the odometer; empty variable lists get a single pass
            let mut pos = variables.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < concepts.len() {
                    break;
                }
                odometer[pos] = 0;
            }
            if odometer.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    Ok(SearchOutcome::NotFound { examined })
}
