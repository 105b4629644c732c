use std::collections::BTreeSet;

use crate::logic::{Formula, Sequent, Universe};

/// A consequence relation over a finite universe: the strict part is the
/// lattice order on representatives, the defeasible part an arbitrary set of
/// ordered index pairs.
#[derive(Debug, Clone)]
pub struct ConsequenceRelation {
    universe: Universe,
    strict: BTreeSet<(usize, usize)>,
    defeasible: BTreeSet<(usize, usize)>,
}

impl ConsequenceRelation {
    pub fn new(universe: Universe, defeasible: BTreeSet<(usize, usize)>) -> Self {
        let n = universe.len();
        let mut strict = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if universe.leq(i, j) {
                    strict.insert((i, j));
                }
            }
        }
        Self {
            universe,
            strict,
            defeasible,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn strict(&self) -> &BTreeSet<(usize, usize)> {
        &self.strict
    }

    pub fn defeasible(&self) -> &BTreeSet<(usize, usize)> {
        &self.defeasible
    }

    pub fn holds_strict(&self, lhs: usize, rhs: usize) -> bool {
        self.strict.contains(&(lhs, rhs))
    }

    pub fn holds_defeasible(&self, lhs: usize, rhs: usize) -> bool {
        self.defeasible.contains(&(lhs, rhs))
    }

    /// Replaces the defeasible part, keeping universe and strict part.
    pub fn with_defeasible(&self, defeasible: BTreeSet<(usize, usize)>) -> Self {
        Self {
            universe: self.universe.clone(),
            strict: self.strict.clone(),
            defeasible,
        }
    }

    pub fn rep(&self, i: usize) -> &Formula {
        self.universe.rep(i)
    }

    pub fn defeasible_sequent(&self, lhs: usize, rhs: usize) -> Sequent {
        Sequent::defeasible(self.rep(lhs).clone(), self.rep(rhs).clone())
    }

    pub fn strict_sequent(&self, lhs: usize, rhs: usize) -> Sequent {
        Sequent::strict(self.rep(lhs).clone(), self.rep(rhs).clone())
    }
}
