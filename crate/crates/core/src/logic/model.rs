use std::collections::BTreeMap;

use thiserror::Error;

use crate::fca::{Concept, FormalContext};

use super::ast::{Formula, Sequent, SequentKind};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("variable `{0}` is not bound by the valuation")]
    UnboundVariable(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("valuation of `{var}` is not a stable concept: extent closes to {{{closed}}}")]
    UnstableValuation { var: String, closed: String },
    #[error("expected a strict sequent, found `|~`")]
    ExpectedStrict,
    #[error("universe exceeds the cap of {cap} elements")]
    UniverseTooLarge { cap: usize },
}

/// A polarity-based model: a formal context plus a valuation sending each
/// variable to a concept of that context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolarityModel {
    context: FormalContext,
    valuation: BTreeMap<String, Concept>,
}

impl PolarityModel {
    /// Checks Galois stability of every assigned concept.
    pub fn new(
        context: FormalContext,
        valuation: BTreeMap<String, Concept>,
    ) -> Result<Self, LogicError> {
        for (var, concept) in &valuation {
            if !concept.is_stable(&context) {
                let closed = context.close_extent(&concept.extent);
                return Err(LogicError::UnstableValuation {
                    var: var.clone(),
                    closed: closed.extent_names(&context).join(", "),
                });
            }
        }
        Ok(Self { context, valuation })
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn valuation(&self) -> &BTreeMap<String, Concept> {
        &self.valuation
    }

    /// Homomorphic extension of the valuation to formulas.
    pub fn interpret(&self, f: &Formula) -> Result<Concept, LogicError> {
        match f {
            Formula::Top => Ok(self.context.top_concept()),
            Formula::Bot => Ok(self.context.bottom_concept()),
            Formula::Var(name) => self
                .valuation
                .get(name)
                .cloned()
                .ok_or_else(|| LogicError::UnboundVariable(name.clone())),
            Formula::And(l, r) => {
                let l = self.interpret(l)?;
                let r = self.interpret(r)?;
                Ok(self.context.concept_meet(&l, &r))
            }
            Formula::Or(l, r) => {
                let l = self.interpret(l)?;
                let r = self.interpret(r)?;
                Ok(self.context.concept_join(&l, &r))
            }
        }
    }

    /// Object `a` satisfies `f` iff `a` is in the extent of the interpretation.
    pub fn satisfies(&self, object: &str, f: &Formula) -> Result<bool, LogicError> {
        let a = self
            .context
            .object_index(object)
            .map_err(|_| LogicError::UnknownObject(object.to_string()))?;
        Ok(self.interpret(f)?.extent.contains(&a))
    }

    pub fn satisfies_index(&self, object: usize, f: &Formula) -> Result<bool, LogicError> {
        Ok(self.interpret(f)?.extent.contains(&object))
    }

    /// Attribute `x` co-satisfies `f` iff `x` is in the intent.
    pub fn co_satisfies(&self, attribute: &str, f: &Formula) -> Result<bool, LogicError> {
        let x = self
            .context
            .attribute_index(attribute)
            .map_err(|_| LogicError::UnknownAttribute(attribute.to_string()))?;
        Ok(self.interpret(f)?.intent.contains(&x))
    }

    /// Extent inclusion of the interpretations.
    pub fn entails(&self, lhs: &Formula, rhs: &Formula) -> Result<bool, LogicError> {
        let l = self.interpret(lhs)?;
        let r = self.interpret(rhs)?;
        Ok(l.extent.is_subset(&r.extent))
    }

    pub fn valid_sequent(&self, s: &Sequent) -> Result<bool, LogicError> {
        if s.kind != SequentKind::Strict {
            return Err(LogicError::ExpectedStrict);
        }
        self.entails(&s.lhs, &s.rhs)
    }
}
