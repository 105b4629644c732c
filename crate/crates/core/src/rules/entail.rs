use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{LogicError, Sequent, SequentKind, Universe};

use super::check::RuleName;
use super::graph::{sccs, shortest_path};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EntailError {
    #[error("`{0}` is outside the universe; declare the variable so the universe can be enlarged")]
    OutsideUniverse(String),
    #[error("strict assumption `{0}` does not hold in the lattice")]
    InconsistentStrict(String),
}

/// A proof tree. Leaves are assumptions from the knowledge base, reflexivity
/// axioms, or strict sequents valid in the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Assumption(Sequent),
    Reflexivity(Sequent),
    Lattice(Sequent),
    Inference {
        rule: RuleName,
        conclusion: Sequent,
        premises: Vec<Derivation>,
    },
}

impl Derivation {
    pub fn conclusion(&self) -> &Sequent {
        match self {
            Derivation::Assumption(s)
            | Derivation::Reflexivity(s)
            | Derivation::Lattice(s) => s,
            Derivation::Inference { conclusion, .. } => conclusion,
        }
    }

    /// The knowledge-base members this proof actually uses.
    pub fn assumptions(&self) -> Vec<&Sequent> {
        let mut out = Vec::new();
        self.collect_assumptions(&mut out);
        out
    }

    fn collect_assumptions<'a>(&'a self, out: &mut Vec<&'a Sequent>) {
        match self {
            Derivation::Assumption(s) => out.push(s),
            Derivation::Reflexivity(_) | Derivation::Lattice(_) => {}
            Derivation::Inference { premises, .. } => {
                for p in premises {
                    p.collect_assumptions(out);
                }
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let indent = "  ".repeat(depth);
        match self {
            Derivation::Assumption(s) => out.push_str(&format!("{indent}{s}   [assumption]\n")),
            Derivation::Reflexivity(s) => out.push_str(&format!("{indent}{s}   [reflexivity]\n")),
            Derivation::Lattice(s) => out.push_str(&format!("{indent}{s}   [lattice]\n")),
            Derivation::Inference {
                rule,
                conclusion,
                premises,
            } => {
                out.push_str(&format!("{indent}{conclusion}   [{rule}]\n"));
                for p in premises {
                    p.render_into(out, depth + 1);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
enum How {
    Assumption(Sequent),
    Reflexivity,
    Rule {
        rule: RuleName,
        defeasible: Vec<(usize, usize)>,
        strict: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone)]
pub struct Entailment {
    pub entailed: bool,
    pub derivation: Option<Derivation>,
    pub saturated: BTreeSet<(usize, usize)>,
}

fn element_of(universe: &Universe, f: &crate::logic::Formula) -> Result<usize, EntailError> {
    universe.element_of(f).map_err(|e| match e {
        LogicError::UnboundVariable(v) => EntailError::OutsideUniverse(v),
        other => EntailError::OutsideUniverse(other.to_string()),
    })
}

/// Saturates the knowledge base under Reflexivity, LLE, RW, CM and Cut
/// (plus Loop when requested) to the least fixpoint within the universe,
/// then reports membership of the goal. Finiteness of the universe makes
/// the fixpoint exist; the scan order is fixed so proofs are reproducible.
pub fn entail_cc(
    universe: &Universe,
    kb: &[Sequent],
    goal: &Sequent,
    with_loop: bool,
) -> Result<Entailment, EntailError> {
    let n = universe.len();
    let mut how: BTreeMap<(usize, usize), How> = BTreeMap::new();
    let mut facts: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |facts: &mut BTreeSet<(usize, usize)>,
                   how: &mut BTreeMap<(usize, usize), How>,
                   pair: (usize, usize),
                   h: How|
     -> bool {
        if facts.insert(pair) {
            how.insert(pair, h);
            true
        } else {
            false
        }
    };

    for s in kb {
        let lhs = element_of(universe, &s.lhs)?;
        let rhs = element_of(universe, &s.rhs)?;
        match s.kind {
            SequentKind::Strict => {
                if !universe.leq(lhs, rhs) {
                    return Err(EntailError::InconsistentStrict(s.to_string()));
                }
            }
            SequentKind::Defeasible => {
                add(&mut facts, &mut how, (lhs, rhs), How::Assumption(s.clone()));
            }
        }
    }
    for i in 0..n {
        add(&mut facts, &mut how, (i, i), How::Reflexivity);
    }

    loop {
        let mut pending: Vec<((usize, usize), How)> = Vec::new();
        let snapshot: Vec<(usize, usize)> = facts.iter().copied().collect();

        // LLE: lattice-equal antecedents share consequences
        for &(i, k) in &snapshot {
            for j in 0..n {
                if j != i && universe.leq(i, j) && universe.leq(j, i) && !facts.contains(&(j, k)) {
                    pending.push((
                        (j, k),
                        How::Rule {
                            rule: RuleName::LeftLogicalEquivalence,
                            defeasible: vec![(i, k)],
                            strict: vec![(i, j), (j, i)],
                        },
                    ));
                }
            }
        }

        // RW
        for &(k, i) in &snapshot {
            for j in 0..n {
                if universe.leq(i, j) && !facts.contains(&(k, j)) {
                    pending.push((
                        (k, j),
                        How::Rule {
                            rule: RuleName::RightWeakening,
                            defeasible: vec![(k, i)],
                            strict: vec![(i, j)],
                        },
                    ));
                }
            }
        }

        // CM
        for &(i, j) in &snapshot {
            let meet = universe.meet(i, j);
            for &(i2, k) in &snapshot {
                if i2 == i && !facts.contains(&(meet, k)) {
                    pending.push((
                        (meet, k),
                        How::Rule {
                            rule: RuleName::CautiousMonotonicity,
                            defeasible: vec![(i, j), (i, k)],
                            strict: vec![],
                        },
                    ));
                }
            }
        }

        // Cut
        for &(i, j) in &snapshot {
            let meet = universe.meet(i, j);
            for &(m, k) in &snapshot {
                if m == meet && !facts.contains(&(i, k)) {
                    pending.push((
                        (i, k),
                        How::Rule {
                            rule: RuleName::Cut,
                            defeasible: vec![(meet, k), (i, j)],
                            strict: vec![],
                        },
                    ));
                }
            }
        }

        if with_loop {
            for comp in sccs(n, &facts) {
                if comp.len() < 2 {
                    continue;
                }
                for &i in &comp {
                    for &j in &comp {
                        if i == j || facts.contains(&(i, j)) {
                            continue;
                        }
                        let forward = shortest_path(n, &facts, i, j).expect("same component");
                        let back = shortest_path(n, &facts, j, i).expect("same component");
                        let mut chain: Vec<(usize, usize)> = Vec::new();
                        for w in forward.windows(2) {
                            chain.push((w[0], w[1]));
                        }
                        for w in back.windows(2) {
                            chain.push((w[0], w[1]));
                        }
                        pending.push((
                            (i, j),
                            How::Rule {
                                rule: RuleName::Loop,
                                defeasible: chain,
                                strict: vec![],
                            },
                        ));
                    }
                }
            }
        }

        let mut changed = false;
        for (pair, h) in pending {
            changed |= add(&mut facts, &mut how, pair, h);
        }
        if !changed {
            break;
        }
    }

    let goal_lhs = element_of(universe, &goal.lhs)?;
    let goal_rhs = element_of(universe, &goal.rhs)?;
    let (entailed, derivation) = match goal.kind {
        SequentKind::Strict => {
            let ok = universe.leq(goal_lhs, goal_rhs);
            (ok, ok.then(|| Derivation::Lattice(goal.clone())))
        }
        SequentKind::Defeasible => {
            let ok = facts.contains(&(goal_lhs, goal_rhs));
            (
                ok,
                ok.then(|| build_derivation(universe, &how, (goal_lhs, goal_rhs))),
            )
        }
    };

    Ok(Entailment {
        entailed,
        derivation,
        saturated: facts,
    })
}

fn build_derivation(
    universe: &Universe,
    how: &BTreeMap<(usize, usize), How>,
    pair: (usize, usize),
) -> Derivation {
    let sequent = Sequent::defeasible(universe.rep(pair.0).clone(), universe.rep(pair.1).clone());
    match &how[&pair] {
        How::Assumption(s) => Derivation::Assumption(s.clone()),
        How::Reflexivity => Derivation::Reflexivity(sequent),
        How::Rule {
            rule,
            defeasible,
            strict,
        } => {
            let mut premises: Vec<Derivation> = Vec::new();
            match rule {
                // strict premises first for the rules that have them
                RuleName::LeftLogicalEquivalence => {
                    for &(a, b) in strict {
                        premises.push(Derivation::Lattice(Sequent::strict(
                            universe.rep(a).clone(),
                            universe.rep(b).clone(),
                        )));
                    }
                    for &p in defeasible {
                        premises.push(build_derivation(universe, how, p));
                    }
                }
                RuleName::RightWeakening => {
                    for &(a, b) in strict {
                        premises.push(Derivation::Lattice(Sequent::strict(
                            universe.rep(a).clone(),
                            universe.rep(b).clone(),
                        )));
                    }
                    for &p in defeasible {
                        premises.push(build_derivation(universe, how, p));
                    }
                }
                _ => {
                    for &p in defeasible {
                        premises.push(build_derivation(universe, how, p));
                    }
                }
            }
            Derivation::Inference {
                rule: *rule,
                conclusion: sequent,
                premises,
            }
        }
    }
}

/// Re-validates every node of a proof against its rule schema, using the
/// universe to decide lattice facts and meets.
pub fn validate_derivation(
    universe: &Universe,
    kb: &[Sequent],
    d: &Derivation,
) -> Result<(), String> {
    let elem = |f: &crate::logic::Formula| -> Result<usize, String> {
        universe.element_of(f).map_err(|e| e.to_string())
    };
    match d {
        Derivation::Assumption(s) => {
            if kb.contains(s) {
                Ok(())
            } else {
                Err(format!("assumption `{s}` is not in the knowledge base"))
            }
        }
        Derivation::Reflexivity(s) => {
            if s.kind == SequentKind::Defeasible && elem(&s.lhs)? == elem(&s.rhs)? {
                Ok(())
            } else {
                Err(format!("`{s}` is not a reflexivity axiom"))
            }
        }
        Derivation::Lattice(s) => {
            if s.kind == SequentKind::Strict && universe.leq(elem(&s.lhs)?, elem(&s.rhs)?) {
                Ok(())
            } else {
                Err(format!("`{s}` is not a valid lattice sequent"))
            }
        }
        Derivation::Inference {
            rule,
            conclusion,
            premises,
        } => {
            for p in premises {
                validate_derivation(universe, kb, p)?;
            }
            let ps: Vec<&Sequent> = premises.iter().map(|p| p.conclusion()).collect();
            let c_lhs = elem(&conclusion.lhs)?;
            let c_rhs = elem(&conclusion.rhs)?;
            let fail = || {
                Err(format!(
                    "conclusion `{conclusion}` does not follow by {rule}"
                ))
            };
            match rule {
                RuleName::CautiousMonotonicity => {
                    // i |~ j, i |~ k  =>  i∧j |~ k
                    let [p1, p2] = ps.as_slice() else { return fail() };
                    let i = elem(&p1.lhs)?;
                    let j = elem(&p1.rhs)?;
                    let k = elem(&p2.rhs)?;
                    if elem(&p2.lhs)? == i
                        && universe.meet(i, j) == c_lhs
                        && k == c_rhs
                    {
                        Ok(())
                    } else {
                        fail()
                    }
                }
                RuleName::Cut => {
                    // i∧j |~ k, i |~ j  =>  i |~ k
                    let [p1, p2] = ps.as_slice() else { return fail() };
                    let i = elem(&p2.lhs)?;
                    let j = elem(&p2.rhs)?;
                    let k = elem(&p1.rhs)?;
                    if elem(&p1.lhs)? == universe.meet(i, j) && i == c_lhs && k == c_rhs {
                        Ok(())
                    } else {
                        fail()
                    }
                }
                RuleName::RightWeakening => {
                    // i ⊢ j, k |~ i  =>  k |~ j
                    let [p1, p2] = ps.as_slice() else { return fail() };
                    if p1.kind != SequentKind::Strict {
                        return fail();
                    }
                    let i = elem(&p1.lhs)?;
                    let j = elem(&p1.rhs)?;
                    if universe.leq(i, j)
                        && elem(&p2.rhs)? == i
                        && elem(&p2.lhs)? == c_lhs
                        && j == c_rhs
                    {
                        Ok(())
                    } else {
                        fail()
                    }
                }
                RuleName::LeftLogicalEquivalence => {
                    // i ⊢ j, j ⊢ i, i |~ k  =>  j |~ k
                    let [p1, p2, p3] = ps.as_slice() else { return fail() };
                    let i = elem(&p1.lhs)?;
                    let j = elem(&p1.rhs)?;
                    if p1.kind == SequentKind::Strict
                        && p2.kind == SequentKind::Strict
                        && universe.leq(i, j)
                        && universe.leq(j, i)
                        && elem(&p2.lhs)? == j
                        && elem(&p2.rhs)? == i
                        && elem(&p3.lhs)? == i
                        && elem(&p3.rhs)? == c_rhs
                        && j == c_lhs
                    {
                        Ok(())
                    } else {
                        fail()
                    }
                }
                RuleName::Loop => {
                    // the premises form a defeasible cycle through lhs and rhs
                    if ps.is_empty() {
                        return fail();
                    }
                    let mut chain = Vec::new();
                    for p in &ps {
                        if p.kind != SequentKind::Defeasible {
                            return fail();
                        }
                        chain.push((elem(&p.lhs)?, elem(&p.rhs)?));
                    }
                    let cyclic = chain
                        .windows(2)
                        .all(|w| w[0].1 == w[1].0)
                        && chain.last().unwrap().1 == chain[0].0;
                    let visits = |x: usize| chain.iter().any(|&(a, b)| a == x || b == x);
                    if cyclic && chain[0].0 == c_lhs && visits(c_rhs) {
                        Ok(())
                    } else {
                        fail()
                    }
                }
                other => Err(format!("rule {other} cannot appear in a saturation proof")),
            }
        }
    }
}
