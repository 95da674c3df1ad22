//! Partial assignments as consistent literal sets.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};

/// A consistent partial assignment, identified with the set of literals it
/// satisfies. Iteration order is by variable id.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: BTreeMap<Var, bool>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("inconsistent assignment: both phases of variable {var}")]
pub struct InconsistentAssignment {
    pub var: Var,
}

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment::default()
    }

    /// Builds an assignment from the literals it makes true. Fails on a
    /// clashing pair.
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Result<Assignment, InconsistentAssignment> {
        let mut a = Assignment::empty();
        for lit in lits {
            a.bind(lit)?;
        }
        Ok(a)
    }

    /// Makes `lit` true. Binding a literal twice is a no-op; binding its
    /// negation is an error.
    pub fn bind(&mut self, lit: Lit) -> Result<(), InconsistentAssignment> {
        let phase = lit.is_positive();
        match self.map.insert(lit.var(), phase) {
            Some(old) if old != phase => Err(InconsistentAssignment { var: lit.var() }),
            _ => Ok(()),
        }
    }

    /// Extends with every binding of `other`; fails on any clash.
    pub fn union(&self, other: &Assignment) -> Result<Assignment, InconsistentAssignment> {
        let mut a = self.clone();
        for lit in other.iter_true_lits() {
            a.bind(lit)?;
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn assigns(&self, var: Var) -> bool {
        self.map.contains_key(&var)
    }

    /// The truth value of a literal, or `None` if its variable is unassigned.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.map.get(&lit.var()).map(|&phase| phase == lit.is_positive())
    }

    /// The literals made true, in variable order.
    pub fn iter_true_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.map.iter().map(|(&var, &phase)| {
            if phase {
                var.positive()
            } else {
                var.negative()
            }
        })
    }

    pub fn satisfies_clause(&self, c: &Clause) -> bool {
        c.iter().any(|l| self.value(l) == Some(true))
    }

    pub fn falsifies_clause(&self, c: &Clause) -> bool {
        c.iter().all(|l| self.value(l) == Some(false))
    }

    /// True when every clause of `g` contains a satisfied literal.
    pub fn satisfies_formula(&self, g: &Formula) -> bool {
        g.iter().all(|(_, c)| self.satisfies_clause(c))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, lit) in self.iter_true_lits().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment{self}")
    }
}
