//! Finite formula universes.
//!
//! The closure of the variable interpretations together with top and bottom
//! under meet and join, computed pointwise over a tuple of base models. Two
//! formulas with the same interpretation in every base model are
//! indistinguishable by satisfaction everywhere, so one representative per
//! interpretation tuple exhausts the whole language for checking purposes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::fca::Concept;

use super::ast::Formula;
use super::model::{LogicError, PolarityModel};

/// One universe member: its canonical formula and its interpretation in each
/// base model. The representative is the shortest formula found, ties broken
/// lexicographically on the rendered text.
#[derive(Debug, Clone)]
pub struct UniverseElement {
    pub rep: Formula,
    pub interp: Vec<Concept>,
}

#[derive(Debug, Clone)]
pub struct Universe {
    bases: Vec<Arc<PolarityModel>>,
    elements: Vec<UniverseElement>,
    index: BTreeMap<Vec<Concept>, usize>,
    meet_tab: Vec<Vec<usize>>,
    join_tab: Vec<Vec<usize>>,
    leq_tab: Vec<Vec<bool>>,
    top: usize,
    bottom: usize,
}

fn render_key(f: &Formula) -> (usize, String) {
    let s = f.to_string();
    (s.chars().count(), s)
}

fn better(candidate: &Formula, current: &Formula) -> bool {
    render_key(candidate) < render_key(current)
}

impl Universe {
    /// Builds the generated universe over the given base models.
    ///
    /// Element order is deterministic: variables in declaration order, then
    /// top, then bottom, then closure discoveries in scan order. `cap`
    /// aborts oversized closures.
    pub fn build(
        bases: Vec<Arc<PolarityModel>>,
        variables: &[String],
        cap: Option<usize>,
    ) -> Result<Self, LogicError> {
        assert!(!bases.is_empty(), "universe needs at least one base model");
        let mut elements: Vec<UniverseElement> = Vec::new();
        let mut index: BTreeMap<Vec<Concept>, usize> = BTreeMap::new();

        let insert = |elements: &mut Vec<UniverseElement>,
                          index: &mut BTreeMap<Vec<Concept>, usize>,
                          interp: Vec<Concept>,
                          rep: Formula|
         -> Result<bool, LogicError> {
            if let Some(&i) = index.get(&interp) {
                if better(&rep, &elements[i].rep) {
                    elements[i].rep = rep;
                }
                return Ok(false);
            }
            if let Some(cap) = cap {
                if elements.len() >= cap {
                    return Err(LogicError::UniverseTooLarge { cap });
                }
            }
            index.insert(interp.clone(), elements.len());
            elements.push(UniverseElement { rep, interp });
            Ok(true)
        };

        for var in variables {
            let interp = bases
                .iter()
                .map(|b| b.interpret(&Formula::Var(var.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            insert(&mut elements, &mut index, interp, Formula::var(var.clone()))?;
        }
        let top_interp: Vec<Concept> = bases.iter().map(|b| b.context().top_concept()).collect();
        insert(&mut elements, &mut index, top_interp.clone(), Formula::Top)?;
        let bot_interp: Vec<Concept> = bases.iter().map(|b| b.context().bottom_concept()).collect();
        insert(&mut elements, &mut index, bot_interp.clone(), Formula::Bot)?;

        // close under pointwise meet and join
        loop {
            let n = elements.len();
            let mut changed = false;
            for i in 0..n {
                for j in i + 1..n {
                    let meet: Vec<Concept> = bases
                        .iter()
                        .enumerate()
                        .map(|(b, base)| {
                            base.context()
                                .concept_meet(&elements[i].interp[b], &elements[j].interp[b])
                        })
                        .collect();
                    let rep = Formula::and(elements[i].rep.clone(), elements[j].rep.clone());
                    changed |= insert(&mut elements, &mut index, meet, rep)?;

                    let join: Vec<Concept> = bases
                        .iter()
                        .enumerate()
                        .map(|(b, base)| {
                            base.context()
                                .concept_join(&elements[i].interp[b], &elements[j].interp[b])
                        })
                        .collect();
                    let rep = Formula::or(elements[i].rep.clone(), elements[j].rep.clone());
                    changed |= insert(&mut elements, &mut index, join, rep)?;
                }
            }
            if !changed {
                break;
            }
        }

        // shrink representatives to a fixpoint
        loop {
            let mut changed = false;
            for i in 0..elements.len() {
                for j in 0..elements.len() {
                    if i == j {
                        continue;
                    }
                    let meet_key: Vec<Concept> = bases
                        .iter()
                        .enumerate()
                        .map(|(b, base)| {
                            base.context()
                                .concept_meet(&elements[i].interp[b], &elements[j].interp[b])
                        })
                        .collect();
                    let target = index[&meet_key];
                    let cand = Formula::and(elements[i].rep.clone(), elements[j].rep.clone());
                    if better(&cand, &elements[target].rep) {
                        elements[target].rep = cand;
                        changed = true;
                    }
                    let join_key: Vec<Concept> = bases
                        .iter()
                        .enumerate()
                        .map(|(b, base)| {
                            base.context()
                                .concept_join(&elements[i].interp[b], &elements[j].interp[b])
                        })
                        .collect();
                    let target = index[&join_key];
                    let cand = Formula::or(elements[i].rep.clone(), elements[j].rep.clone());
                    if better(&cand, &elements[target].rep) {
                        elements[target].rep = cand;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let n = elements.len();
        let mut meet_tab = vec![vec![0usize; n]; n];
        let mut join_tab = vec![vec![0usize; n]; n];
        let mut leq_tab = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let meet_key: Vec<Concept> = bases
                    .iter()
                    .enumerate()
                    .map(|(b, base)| {
                        base.context()
                            .concept_meet(&elements[i].interp[b], &elements[j].interp[b])
                    })
                    .collect();
                meet_tab[i][j] = index[&meet_key];
                let join_key: Vec<Concept> = bases
                    .iter()
                    .enumerate()
                    .map(|(b, base)| {
                        base.context()
                            .concept_join(&elements[i].interp[b], &elements[j].interp[b])
                    })
                    .collect();
                join_tab[i][j] = index[&join_key];
                leq_tab[i][j] = elements[i]
                    .interp
                    .iter()
                    .zip(&elements[j].interp)
                    .all(|(c, d)| c.extent.is_subset(&d.extent));
            }
        }
        let top = index[&top_interp];
        let bottom = index[&bot_interp];

        Ok(Self {
            bases,
            elements,
            index,
            meet_tab,
            join_tab,
            leq_tab,
            top,
            bottom,
        })
    }

    pub fn bases(&self) -> &[Arc<PolarityModel>] {
        &self.bases
    }

    pub fn elements(&self) -> &[UniverseElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Formula {
        &self.elements[i].rep
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet_tab[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join_tab[i][j]
    }

    /// Pointwise lattice order over the interpretation tuples.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq_tab[i][j]
    }

    /// Index of the base model within this universe, if present.
    pub fn base_index(&self, base: &Arc<PolarityModel>) -> Option<usize> {
        self.bases
            .iter()
            .position(|b| Arc::ptr_eq(b, base) || **b == **base)
    }

    /// Universe index of an arbitrary formula over the declared variables.
    pub fn element_of(&self, f: &Formula) -> Result<usize, LogicError> {
        match f {
            Formula::Top => Ok(self.top),
            Formula::Bot => Ok(self.bottom),
            Formula::Var(_) => {
                let interp = self
                    .bases
                    .iter()
                    .map(|b| b.interpret(f))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.index[&interp])
            }
            Formula::And(l, r) => {
                let l = self.element_of(l)?;
                let r = self.element_of(r)?;
                Ok(self.meet_tab[l][r])
            }
            Formula::Or(l, r) => {
                let l = self.element_of(l)?;
                let r = self.element_of(r)?;
                Ok(self.join_tab[l][r])
            }
        }
    }
}

/// The generated sublattice of a single polarity-based model: the closure of
/// the variable concepts plus top and bottom under meet and join, with one
/// canonical formula per concept.
pub fn generated_sublattice(
    model: &PolarityModel,
    variables: &[String],
) -> Result<Vec<(Formula, Concept)>, LogicError> {
    let u = Universe::build(vec![Arc::new(model.clone())], variables, None)?;
    Ok(u.elements
        .iter()
        .map(|e| (e.rep.clone(), e.interp[0].clone()))
        .collect())
}
