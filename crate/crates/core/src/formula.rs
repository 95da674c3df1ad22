//! CNF formulas as clause sets with stable, insertion-ordered ids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::assignment::Assignment;
use crate::clause::{Clause, Restricted};
use crate::lit::{Lit, Var};

/// Identifier of a clause within a formula or proof, starting at 1. Proof
/// formats refer to clauses by these ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub u32);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of clauses. Ids are assigned in first-insertion order and inserting
/// a clause that is already present returns the existing id.
#[derive(Clone, Default)]
pub struct Formula {
    clauses: Vec<Clause>,
    index: HashMap<Clause, ClauseId>,
}

impl Formula {
    pub fn empty() -> Formula {
        Formula::default()
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> Formula {
        let mut g = Formula::empty();
        for c in clauses {
            g.insert(c);
        }
        g
    }

    /// Inserts a clause, returning its id. Membership is set semantics:
    /// an existing clause keeps its original id.
    pub fn insert(&mut self, c: Clause) -> ClauseId {
        if let Some(&id) = self.index.get(&c) {
            return id;
        }
        let id = ClauseId(self.clauses.len() as u32 + 1);
        self.clauses.push(c.clone());
        self.index.insert(c, id);
        id
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        if id.0 == 0 {
            return None;
        }
        self.clauses.get(id.0 as usize - 1)
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.index.contains_key(c)
    }

    pub fn id_of(&self, c: &Clause) -> Option<ClauseId> {
        self.index.get(c).copied()
    }

    pub fn contains_empty_clause(&self) -> bool {
        self.index.contains_key(&Clause::empty())
    }

    /// Clauses in id order, with their ids.
    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &Clause)> {
        self.clauses
            .iter()
            .enumerate()
            .map(|(i, c)| (ClauseId(i as u32 + 1), c))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// All variables mentioned by any clause, in ascending order.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.vars().into_iter().next_back()
    }

    /// Restricts the formula under a partial assignment: satisfied clauses
    /// vanish, falsified literals are removed from the rest. Survivors keep
    /// their relative order; clauses that collapse together share an id.
    pub fn restrict(&self, a: &Assignment) -> Formula {
        let mut out = Formula::empty();
        for c in &self.clauses {
            if let Restricted::Clause(rc) = c.restrict(a) {
                out.insert(rc);
            }
        }
        out
    }

    /// The projection onto a literal: for every clause containing `lit`,
    /// the clause with `lit` removed. Never mentions `lit`'s variable.
    pub fn project(&self, lit: Lit) -> Formula {
        let mut out = Formula::empty();
        for c in &self.clauses {
            if c.contains(lit) {
                out.insert(c.without(lit));
            }
        }
        out
    }

    /// Set equality, ignoring ids.
    pub fn same_clauses(&self, other: &Formula) -> bool {
        self.len() == other.len() && self.clauses.iter().all(|c| other.contains(c))
    }
}

impl PartialEq for Formula {
    /// Formulas compare as ordered clause lists; two formulas built by
    /// inserting the same clauses in the same order are equal.
    fn eq(&self, other: &Formula) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for Formula {}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{{")?;
        for (id, c) in self.iter() {
            writeln!(f, "  {id}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula{self}")
    }
}
