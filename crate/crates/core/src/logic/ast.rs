use std::collections::BTreeSet;
use std::fmt;

/// Formula AST. `And` binds tighter than `Or`; both associate left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bot,
    Var(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, parent: u8, right: bool) -> fmt::Result {
        let prec = self.precedence();
        let needs_parens = prec < parent || (prec == parent && right && prec < 3);
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "top")?,
            Formula::Bot => write!(f, "bot")?,
            Formula::Var(name) => write!(f, "{name}")?,
            Formula::And(l, r) => {
                l.write(f, prec, false)?;
                write!(f, " & ")?;
                r.write(f, prec, true)?;
            }
            Formula::Or(l, r) => {
                l.write(f, prec, false)?;
                write!(f, " | ")?;
                r.write(f, prec, true)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequentKind {
    Strict,
    Defeasible,
}

/// A sequent: strict (`|-`) or defeasible (`|~`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub kind: SequentKind,
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Sequent {
    pub fn strict(lhs: Formula, rhs: Formula) -> Self {
        Sequent {
            kind: SequentKind::Strict,
            lhs,
            rhs,
        }
    }

    pub fn defeasible(lhs: Formula, rhs: Formula) -> Self {
        Sequent {
            kind: SequentKind::Defeasible,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.kind {
            SequentKind::Strict => "|-",
            SequentKind::Defeasible => "|~",
        };
        write!(f, "{} {} {}", self.lhs, arrow, self.rhs)
    }
}
