//! Clauses as canonical, nontautological literal sets.

use std::fmt;

use thiserror::Error;

use crate::assignment::Assignment;
use crate::lit::{Lit, Var};

/// A clause: a set of literals with no clashing pair, stored sorted. The
/// empty clause is the unsatisfiable clause.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: Vec<Lit>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("tautological clause: contains both phases of variable {var}")]
pub struct TautologyError {
    pub var: Var,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ResolveError {
    #[error("pivot {pivot} does not appear with opposite phases in the premises")]
    PivotNotOpposed { pivot: Var },
    #[error("resolvent is tautological on variable {var}")]
    TautologicalResolvent { var: Var },
}

/// Result of restricting a clause under a partial assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restricted {
    /// The assignment satisfies the clause; it vanishes from the formula.
    Satisfied,
    /// The clause with its falsified literals removed.
    Clause(Clause),
}

impl Clause {
    /// Builds a clause from literals, deduplicating and sorting. Rejects
    /// tautological literal sets rather than dropping them silently.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause, TautologyError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].clashes_with(pair[1]) {
                return Err(TautologyError { var: pair[0].var() });
            }
        }
        Ok(Clause { lits })
    }

    /// The empty clause.
    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    /// Literals in canonical order.
    pub fn literals(&self) -> &[Lit] {
        &self.lits
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.lits.iter().copied()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    /// True when every literal of `self` appears in `other`, i.e. `other`
    /// is a weakening of `self`.
    pub fn subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    /// The clause with one literal removed. No-op if the literal is absent.
    pub fn without(&self, lit: Lit) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }

    /// Set difference with an arbitrary literal set.
    pub fn without_all(&self, remove: &[Lit]) -> Clause {
        Clause {
            lits: self
                .lits
                .iter()
                .copied()
                .filter(|l| !remove.contains(l))
                .collect(),
        }
    }

    /// The smallest assignment falsifying this clause: every literal negated.
    /// Well-defined because a clause never contains a clashing pair.
    pub fn falsifying_assignment(&self) -> Assignment {
        let mut a = Assignment::empty();
        for lit in self.iter() {
            a.bind(!lit).expect("clause literals never clash");
        }
        a
    }

    /// Resolves `self` and `other` on `pivot`. The pivot must occur with
    /// opposite phases in the two premises; the union of the remaining
    /// literals must be nontautological.
    pub fn resolvent(&self, other: &Clause, pivot: Var) -> Result<Clause, ResolveError> {
        let pos = pivot.positive();
        let neg = pivot.negative();
        let (c, d) = if self.contains(pos) && other.contains(neg) {
            (self, other)
        } else if self.contains(neg) && other.contains(pos) {
            (other, self)
        } else {
            return Err(ResolveError::PivotNotOpposed { pivot });
        };
        let lits = c.without(pos).lits.into_iter().chain(d.without(neg).lits);
        Clause::new(lits).map_err(|e| ResolveError::TautologicalResolvent { var: e.var })
    }

    /// Restricts the clause under a partial assignment: satisfied clauses
    /// vanish, falsified literals are removed. A fully falsified clause
    /// restricts to the empty clause.
    pub fn restrict(&self, a: &Assignment) -> Restricted {
        if self.lits.iter().any(|&l| a.value(l) == Some(true)) {
            return Restricted::Satisfied;
        }
        Restricted::Clause(Clause {
            lits: self
                .lits
                .iter()
                .copied()
                .filter(|&l| a.value(l) != Some(false))
                .collect(),
        })
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, lit) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clause[{self}]")
    }
}
