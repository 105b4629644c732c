use std::fmt;

use super::graph::{sccs, shortest_path};
use super::relation::ConsequenceRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    Reflexivity,
    LeftLogicalEquivalence,
    RightWeakening,
    CautiousMonotonicity,
    Cut,
    Loop,
    GeneralizedLoop,
    Or,
    Equivalence,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleName::Reflexivity => "Reflexivity",
            RuleName::LeftLogicalEquivalence => "LLE",
            RuleName::RightWeakening => "RW",
            RuleName::CautiousMonotonicity => "CM",
            RuleName::Cut => "Cut",
            RuleName::Loop => "Loop",
            RuleName::GeneralizedLoop => "GeneralizedLoop",
            RuleName::Or => "Or",
            RuleName::Equivalence => "Equivalence",
        };
        write!(f, "{name}")
    }
}

/// A sequent by universe indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequentIdx {
    pub strict: bool,
    pub lhs: usize,
    pub rhs: usize,
}

impl SequentIdx {
    pub fn strict(lhs: usize, rhs: usize) -> Self {
        Self {
            strict: true,
            lhs,
            rhs,
        }
    }

    pub fn defeasible(lhs: usize, rhs: usize) -> Self {
        Self {
            strict: false,
            lhs,
            rhs,
        }
    }
}

/// A rule instance whose premises hold but whose conclusion is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleViolation {
    pub rule: RuleName,
    pub premises: Vec<SequentIdx>,
    pub conclusion: SequentIdx,
}

impl RuleViolation {
    pub fn render(&self, r: &ConsequenceRelation) -> String {
        let seq = |s: &SequentIdx| {
            if s.strict {
                r.strict_sequent(s.lhs, s.rhs).to_string()
            } else {
                r.defeasible_sequent(s.lhs, s.rhs).to_string()
            }
        };
        let premises: Vec<String> = self.premises.iter().map(&seq).collect();
        format!(
            "{}: [{}] but not {}",
            self.rule,
            premises.join("; "),
            seq(&self.conclusion)
        )
    }
}

/// Checks closure under Reflexivity, LLE, RW, CM and Cut. Returns every
/// instance with present premises and an absent conclusion; empty iff the
/// relation is closed.
pub fn check_closure_cc(r: &ConsequenceRelation) -> Vec<RuleViolation> {
    let n = r.universe().len();
    let mut out = Vec::new();

    for i in 0..n {
        if !r.holds_defeasible(i, i) {
            out.push(RuleViolation {
                rule: RuleName::Reflexivity,
                premises: vec![],
                conclusion: SequentIdx::defeasible(i, i),
            });
        }
    }

    // LLE: lattice-equal left-hand sides carry the same consequences
    for i in 0..n {
        for j in 0..n {
            if i == j || !(r.universe().leq(i, j) && r.universe().leq(j, i)) {
                continue;
            }
            for k in 0..n {
                if r.holds_defeasible(i, k) && !r.holds_defeasible(j, k) {
                    out.push(RuleViolation {
                        rule: RuleName::LeftLogicalEquivalence,
                        premises: vec![
                            SequentIdx::strict(i, j),
                            SequentIdx::strict(j, i),
                            SequentIdx::defeasible(i, k),
                        ],
                        conclusion: SequentIdx::defeasible(j, k),
                    });
                }
            }
        }
    }

    // RW: from k |~ i and i ⊢ j conclude k |~ j
    for &(k, i) in r.defeasible() {
        for j in 0..n {
            if r.universe().leq(i, j) && !r.holds_defeasible(k, j) {
                out.push(RuleViolation {
                    rule: RuleName::RightWeakening,
                    premises: vec![SequentIdx::strict(i, j), SequentIdx::defeasible(k, i)],
                    conclusion: SequentIdx::defeasible(k, j),
                });
            }
        }
    }

    // CM: from i |~ j and i |~ k conclude i∧j |~ k
    for i in 0..n {
        for j in 0..n {
            if !r.holds_defeasible(i, j) {
                continue;
            }
            let meet = r.universe().meet(i, j);
            for k in 0..n {
                if r.holds_defeasible(i, k) && !r.holds_defeasible(meet, k) {
                    out.push(RuleViolation {
                        rule: RuleName::CautiousMonotonicity,
                        premises: vec![SequentIdx::defeasible(i, j), SequentIdx::defeasible(i, k)],
                        conclusion: SequentIdx::defeasible(meet, k),
                    });
                }
            }
        }
    }

    // Cut: from i∧j |~ k and i |~ j conclude i |~ k
    for i in 0..n {
        for j in 0..n {
            if !r.holds_defeasible(i, j) {
                continue;
            }
            let meet = r.universe().meet(i, j);
            for k in 0..n {
                if r.holds_defeasible(meet, k) && !r.holds_defeasible(i, k) {
                    out.push(RuleViolation {
                        rule: RuleName::Cut,
                        premises: vec![
                            SequentIdx::defeasible(meet, k),
                            SequentIdx::defeasible(i, j),
                        ],
                        conclusion: SequentIdx::defeasible(i, k),
                    });
                }
            }
        }
    }

    out
}

fn cycle_violations(r: &ConsequenceRelation, rule: RuleName) -> Vec<RuleViolation> {
    let n = r.universe().len();
    let mut out = Vec::new();
    for comp in sccs(n, r.defeasible()) {
        if comp.len() < 2 {
            continue;
        }
        for &i in &comp {
            for &j in &comp {
                if i == j || r.holds_defeasible(i, j) {
                    continue;
                }
                // witness cycle: i ⇝ j then j ⇝ i through defeasible edges
                let forward = shortest_path(n, r.defeasible(), i, j)
                    .expect("members of one component are connected");
                let back = shortest_path(n, r.defeasible(), j, i)
                    .expect("members of one component are connected");
                let mut premises = Vec::new();
                for w in forward.windows(2) {
                    premises.push(SequentIdx::defeasible(w[0], w[1]));
                }
                for w in back.windows(2) {
                    premises.push(SequentIdx::defeasible(w[0], w[1]));
                }
                out.push(RuleViolation {
                    rule,
                    premises,
                    conclusion: SequentIdx::defeasible(i, j),
                });
            }
        }
    }
    out
}

/// Within every defeasible cycle all ordered pairs must be present; the
/// strongly connected components of the defeasible digraph decide this for
/// every cycle length at once.
pub fn check_loop(r: &ConsequenceRelation) -> Vec<RuleViolation> {
    cycle_violations(r, RuleName::Loop)
}

/// The derived form: both checks agree on verdicts and differ only in the
/// reported rule name.
pub fn check_generalized_loop(r: &ConsequenceRelation) -> Vec<RuleViolation> {
    cycle_violations(r, RuleName::GeneralizedLoop)
}

/// From i |~ k and j |~ k conclude i∨j |~ k. Premise pairs are scanned
/// unordered (i ≤ j).
pub fn check_or(r: &ConsequenceRelation) -> Vec<RuleViolation> {
    let n = r.universe().len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let join = r.universe().join(i, j);
            for k in 0..n {
                if r.holds_defeasible(i, k)
                    && r.holds_defeasible(j, k)
                    && !r.holds_defeasible(join, k)
                {
                    out.push(RuleViolation {
                        rule: RuleName::Or,
                        premises: vec![SequentIdx::defeasible(i, k), SequentIdx::defeasible(j, k)],
                        conclusion: SequentIdx::defeasible(join, k),
                    });
                }
            }
        }
    }
    out
}

/// Mutually defeasible formulas must have identical consequences.
pub fn check_equivalence_rule(r: &ConsequenceRelation) -> Vec<RuleViolation> {
    let n = r.universe().len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !(r.holds_defeasible(i, j) && r.holds_defeasible(j, i)) {
                continue;
            }
            for k in 0..n {
                if r.holds_defeasible(i, k) && !r.holds_defeasible(j, k) {
                    out.push(RuleViolation {
                        rule: RuleName::Equivalence,
                        premises: vec![
                            SequentIdx::defeasible(i, j),
                            SequentIdx::defeasible(j, i),
                            SequentIdx::defeasible(i, k),
                        ],
                        conclusion: SequentIdx::defeasible(j, k),
                    });
                }
            }
        }
    }
    out
}
