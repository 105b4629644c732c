use std::collections::{BTreeMap, BTreeSet};

use super::context::{ContextError, FormalContext};

/// A formal concept: a Galois-stable (extent, intent) pair.
///
/// Stability is relative to the owning context and can be re-checked with
/// [`Concept::is_stable`]. The derived `Ord` is lexicographic and used only
/// for deterministic container keys; the lattice order is [`leq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    pub extent: BTreeSet<usize>,
    pub intent: BTreeSet<usize>,
}

impl Concept {
    pub fn is_stable(&self, ctx: &FormalContext) -> bool {
        ctx.up(&self.extent) == self.intent && ctx.down(&self.intent) == self.extent
    }

    pub fn extent_names(&self, ctx: &FormalContext) -> Vec<String> {
        ctx.object_names(&self.extent)
    }

    pub fn intent_names(&self, ctx: &FormalContext) -> Vec<String> {
        ctx.attribute_names(&self.intent)
    }
}

/// Lattice order: `c ≤ d` iff the extent of `c` is contained in the extent
/// of `d` (equivalently, the intent of `d` in the intent of `c`).
pub fn leq(c: &Concept, d: &Concept) -> bool {
    c.extent.is_subset(&d.extent)
}

/// The complete lattice of all formal concepts of a context.
///
/// Concepts are enumerated by lectic (NextClosure) iteration over attribute
/// sets, so the order of `concepts()` is deterministic: the top concept
/// first, the bottom concept last.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    by_extent: BTreeMap<BTreeSet<usize>, usize>,
    by_intent: BTreeMap<BTreeSet<usize>, usize>,
    order: Vec<Vec<bool>>,
    top: usize,
    bottom: usize,
}

impl ConceptLattice {
    /// Enumerates every Galois-stable pair of the context.
    ///
    /// Degenerate contexts (no objects and/or no attributes) produce the
    /// single concept `(A, X)`, where the missing side's derivation is
    /// vacuous and top = bottom.
    pub fn build(context: &FormalContext) -> Self {
        let mut concepts = Vec::new();
        let mut intent = context.close_intent(&BTreeSet::new()).intent;
        loop {
            concepts.push(context.close_intent(&intent));
            match next_closed_intent(context, &intent) {
                Some(next) => intent = next,
                None => break,
            }
        }

        let by_extent: BTreeMap<_, _> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let by_intent: BTreeMap<_, _> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.clone(), i))
            .collect();
        let order: Vec<Vec<bool>> = concepts
            .iter()
            .map(|c| concepts.iter().map(|d| leq(c, d)).collect())
            .collect();
        let all = context.all_objects();
        let top = concepts.iter().position(|c| c.extent == all).unwrap();
        let bottom = concepts
            .iter()
            .position(|c| c.intent == context.all_attributes())
            .unwrap();

        Self {
            context: context.clone(),
            concepts,
            by_extent,
            by_intent,
            order,
            top,
            bottom,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn top(&self) -> &Concept {
        &self.concepts[self.top]
    }

    pub fn bottom(&self) -> &Concept {
        &self.concepts[self.bottom]
    }

    pub fn index_of(&self, c: &Concept) -> Option<usize> {
        self.by_extent
            .get(&c.extent)
            .copied()
            .filter(|&i| self.concepts[i].intent == c.intent)
    }

    pub fn leq_by_index(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    fn member(&self, c: &Concept) -> Result<usize, ContextError> {
        self.index_of(c).ok_or(ContextError::NotInLattice)
    }

    /// Greatest common subconcept: extents intersect.
    pub fn meet(&self, c: &Concept, d: &Concept) -> Result<Concept, ContextError> {
        self.member(c)?;
        self.member(d)?;
        let m = self.context.concept_meet(c, d);
        debug_assert!(self.by_extent.contains_key(&m.extent));
        Ok(m)
    }

    /// Least common superconcept: intents intersect.
    pub fn join(&self, c: &Concept, d: &Concept) -> Result<Concept, ContextError> {
        self.member(c)?;
        self.member(d)?;
        let j = self.context.concept_join(c, d);
        debug_assert!(self.by_intent.contains_key(&j.intent));
        Ok(j)
    }

    /// Cover pairs (i covered by j) of the lattice order, for Hasse output.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.concepts.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.order[i][j] {
                    continue;
                }
                let direct = (0..n).all(|k| {
                    k == i || k == j || !(self.order[i][k] && self.order[k][j])
                });
                if direct {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// NextClosure step: the lectically next Galois-closed attribute set.
fn next_closed_intent(ctx: &FormalContext, y: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    let n = ctx.attribute_count();
    for i in (0..n).rev() {
        if y.contains(&i) {
            continue;
        }
        let mut seed: BTreeSet<usize> = y.iter().copied().filter(|&x| x < i).collect();
        seed.insert(i);
        let candidate = ctx.close_intent(&seed).intent;
        let prefix_ok = candidate
            .iter()
            .all(|&x| x >= i || y.contains(&x));
        if prefix_ok {
            return Some(candidate);
        }
    }
    None
}
