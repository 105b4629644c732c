use std::collections::BTreeSet;

use thiserror::Error;

use super::lattice::Concept;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("duplicate object name `{0}`")]
    DuplicateObject(String),
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("incidence has {rows} rows, expected {expected}")]
    RowCountMismatch { rows: usize, expected: usize },
    #[error("incidence row {row} has {cols} entries, expected {expected}")]
    ColCountMismatch {
        row: usize,
        cols: usize,
        expected: usize,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("concept does not belong to this lattice")]
    NotInLattice,
}

/// A formal context: objects, attributes, and a boolean incidence matrix.
///
/// Object and attribute names are opaque strings; all operations work on
/// positional indices, and every set result iterates in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    incidence: Vec<Vec<bool>>,
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self, ContextError> {
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(ContextError::DuplicateObject(o.clone()));
            }
        }
        seen.clear();
        for a in &attributes {
            if !seen.insert(a.clone()) {
                return Err(ContextError::DuplicateAttribute(a.clone()));
            }
        }
        if incidence.len() != objects.len() {
            return Err(ContextError::RowCountMismatch {
                rows: incidence.len(),
                expected: objects.len(),
            });
        }
        for (row, r) in incidence.iter().enumerate() {
            if r.len() != attributes.len() {
                return Err(ContextError::ColCountMismatch {
                    row,
                    cols: r.len(),
                    expected: attributes.len(),
                });
            }
        }
        Ok(Self {
            objects,
            attributes,
            incidence,
        })
    }

    /// Builds a context from `(object, attribute)` name pairs.
    pub fn from_pairs(
        objects: Vec<String>,
        attributes: Vec<String>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, ContextError> {
        let mut incidence = vec![vec![false; attributes.len()]; objects.len()];
        let ctx = Self::new(objects, attributes, incidence.clone())?;
        for (o, a) in pairs {
            let i = ctx.object_index(o)?;
            let j = ctx.attribute_index(a)?;
            incidence[i][j] = true;
        }
        Self::new(ctx.objects, ctx.attributes, incidence)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn attribute_name(&self, j: usize) -> &str {
        &self.attributes[j]
    }

    pub fn object_index(&self, name: &str) -> Result<usize, ContextError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| ContextError::UnknownObject(name.to_string()))
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize, ContextError> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| ContextError::UnknownAttribute(name.to_string()))
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.incidence[object][attribute]
    }

    pub(crate) fn incidence_rows(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn all_objects(&self) -> BTreeSet<usize> {
        (0..self.objects.len()).collect()
    }

    pub fn all_attributes(&self) -> BTreeSet<usize> {
        (0..self.attributes.len()).collect()
    }

    /// The attributes shared by every object in `b`.
    pub fn up(&self, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.attributes.len())
            .filter(|&x| b.iter().all(|&a| self.incidence[a][x]))
            .collect()
    }

    /// The objects possessing every attribute in `y`.
    pub fn down(&self, y: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.objects.len())
            .filter(|&a| y.iter().all(|&x| self.incidence[a][x]))
            .collect()
    }

    /// Galois closure of an object set: `(B↑↓, B↑)`.
    pub fn close_extent(&self, b: &BTreeSet<usize>) -> Concept {
        let intent = self.up(b);
        let extent = self.down(&intent);
        Concept { extent, intent }
    }

    /// Galois closure of an attribute set: `(Y↓, Y↓↑)`.
    pub fn close_intent(&self, y: &BTreeSet<usize>) -> Concept {
        let extent = self.down(y);
        let intent = self.up(&extent);
        Concept { extent, intent }
    }

    pub fn object_set(&self, names: &[&str]) -> Result<BTreeSet<usize>, ContextError> {
        names.iter().map(|n| self.object_index(n)).collect()
    }

    pub fn attribute_set(&self, names: &[&str]) -> Result<BTreeSet<usize>, ContextError> {
        names.iter().map(|n| self.attribute_index(n)).collect()
    }

    pub fn object_names(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&i| self.objects[i].clone()).collect()
    }

    pub fn attribute_names(&self, set: &BTreeSet<usize>) -> Vec<String> {
        set.iter().map(|&j| self.attributes[j].clone()).collect()
    }

    /// Name-level `up`, reported in attribute declaration order.
    pub fn up_named(&self, objects: &[&str]) -> Result<Vec<String>, ContextError> {
        let b = self.object_set(objects)?;
        Ok(self.attribute_names(&self.up(&b)))
    }

    /// Name-level `down`, reported in object declaration order.
    pub fn down_named(&self, attributes: &[&str]) -> Result<Vec<String>, ContextError> {
        let y = self.attribute_set(attributes)?;
        Ok(self.object_names(&self.down(&y)))
    }

    /// Pointwise concept meet: extents intersect, intent recomputed.
    pub fn concept_meet(&self, c: &Concept, d: &Concept) -> Concept {
        let extent: BTreeSet<usize> = c.extent.intersection(&d.extent).copied().collect();
        let intent = self.up(&extent);
        Concept { extent, intent }
    }

    /// Pointwise concept join: intents intersect, extent recomputed.
    pub fn concept_join(&self, c: &Concept, d: &Concept) -> Concept {
        let intent: BTreeSet<usize> = c.intent.intersection(&d.intent).copied().collect();
        let extent = self.down(&intent);
        Concept { extent, intent }
    }

    pub fn top_concept(&self) -> Concept {
        let extent = self.all_objects();
        let intent = self.up(&extent);
        Concept { extent, intent }
    }

    pub fn bottom_concept(&self) -> Concept {
        let intent = self.all_attributes();
        let extent = self.down(&intent);
        Concept { extent, intent }
    }
}
