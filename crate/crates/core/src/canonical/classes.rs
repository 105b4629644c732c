use std::collections::BTreeSet;

use crate::rules::{check_closure_cc, ConsequenceRelation};

use super::build::CanonicalError;

/// An equivalence class of mutually defeasible universe members. The
/// representative is the lowest universe index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions the universe under mutual defeasible consequence.
///
/// Requires a closed relation: without closure the mutual-pair relation may
/// fail transitivity, so a closure violation is reported instead.
pub fn equiv_classes(r: &ConsequenceRelation) -> Result<Vec<EquivClass>, CanonicalError> {
    let violations = check_closure_cc(r);
    if let Some(v) = violations.into_iter().next() {
        return Err(CanonicalError::NotClosed(v.render(r)));
    }
    let n = r.universe().len();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        for (j, slot) in assigned.iter_mut().enumerate().skip(i + 1) {
            if !*slot && r.holds_defeasible(i, j) && r.holds_defeasible(j, i) {
                members.push(j);
                *slot = true;
            }
        }
        classes.push(EquivClass {
            representative: i,
            members,
        });
    }
    Ok(classes)
}

/// The class order and its strict part, as pairs of class indices.
#[derive(Debug, Clone)]
pub struct ClassOrder {
    /// `le` contains `(i, j)` iff class i ≤ class j (diagonal included).
    pub le: BTreeSet<(usize, usize)>,
    /// The strict part: distinct comparable classes.
    pub strict: BTreeSet<(usize, usize)>,
}

/// Class i ≤ class j iff some member of i is a defeasible consequence of j.
/// On closed relations the order is antisymmetric; a symmetric pair between
/// distinct classes is reported as an error.
pub fn class_order(
    classes: &[EquivClass],
    r: &ConsequenceRelation,
) -> Result<ClassOrder, CanonicalError> {
    let mut le = BTreeSet::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let holds = ci
                .members
                .iter()
                .any(|&chi| r.holds_defeasible(cj.representative, chi));
            if holds {
                le.insert((i, j));
            }
        }
    }
    let mut strict = BTreeSet::new();
    for &(i, j) in &le {
        if i == j {
            continue;
        }
        if le.contains(&(j, i)) {
            return Err(CanonicalError::OrderNotAntisymmetric {
                a: r.rep(classes[i].representative).to_string(),
                b: r.rep(classes[j].representative).to_string(),
            });
        }
        strict.insert((i, j));
    }
    Ok(ClassOrder { le, strict })
}
