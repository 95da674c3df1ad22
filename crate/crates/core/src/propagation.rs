//! Unit propagation with a reproducible trace.

use std::collections::{HashSet, VecDeque};

use crate::assignment::Assignment;
use crate::formula::{ClauseId, Formula};
use crate::lit::{Lit, Var};

/// Why propagation stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A clause (or the assumption set itself) was falsified.
    Conflict(ConflictCause),
    /// No clause is unit or falsified; carries the final assignment,
    /// assumptions included.
    Fixpoint(Assignment),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictCause {
    /// The assumptions contained both phases of this variable. Treated as an
    /// immediate conflict rather than an error so that tautological literal
    /// sets refute trivially.
    Assumptions(Var),
    /// First falsified clause, in clause-id order.
    Clause(ClauseId),
}

/// The result of running propagation to fixpoint or first conflict.
/// `derived` lists each propagated literal with the clause that forced it;
/// every other literal of that premise is falsified by the assumptions or by
/// earlier entries, so the trace is independently checkable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationTrace {
    pub derived: Vec<(Lit, ClauseId)>,
    pub outcome: Outcome,
}

impl PropagationTrace {
    pub fn is_conflict(&self) -> bool {
        matches!(self.outcome, Outcome::Conflict(_))
    }
}

enum ClauseState {
    Satisfied,
    Falsified,
    Unit(Lit),
    Open,
}

fn clause_state(c: &crate::clause::Clause, a: &Assignment) -> ClauseState {
    let mut unassigned = None;
    let mut open = 0;
    for lit in c.iter() {
        match a.value(lit) {
            Some(true) => return ClauseState::Satisfied,
            Some(false) => {}
            None => {
                open += 1;
                unassigned = Some(lit);
            }
        }
    }
    match (open, unassigned) {
        (0, _) => ClauseState::Falsified,
        (1, Some(lit)) => ClauseState::Unit(lit),
        _ => ClauseState::Open,
    }
}

/// Propagates units of `g` under the given assumptions until fixpoint or the
/// first conflict.
///
/// The order is deterministic: a FIFO queue seeded by unit clauses in
/// ascending clause-id order, extended with newly unit clauses (again in id
/// order) after each binding. Falsified clauses are reported as soon as a
/// scan sees them, lowest id first.
pub fn propagate(g: &Formula, assumptions: &[Lit]) -> PropagationTrace {
    let mut assign = Assignment::empty();
    for &lit in assumptions {
        if assign.bind(lit).is_err() {
            return PropagationTrace {
                derived: Vec::new(),
                outcome: Outcome::Conflict(ConflictCause::Assumptions(lit.var())),
            };
        }
    }

    let mut derived: Vec<(Lit, ClauseId)> = Vec::new();
    let mut queue: VecDeque<(Lit, ClauseId)> = VecDeque::new();
    let mut pending: HashSet<Lit> = HashSet::new();

    loop {
        for (id, clause) in g.iter() {
            match clause_state(clause, &assign) {
                ClauseState::Falsified => {
                    return PropagationTrace {
                        derived,
                        outcome: Outcome::Conflict(ConflictCause::Clause(id)),
                    };
                }
                ClauseState::Unit(lit) => {
                    if pending.insert(lit) {
                        queue.push_back((lit, id));
                    }
                }
                ClauseState::Satisfied | ClauseState::Open => {}
            }
        }
        match queue.pop_front() {
            None => {
                return PropagationTrace {
                    derived,
                    outcome: Outcome::Fixpoint(assign),
                };
            }
            Some((lit, id)) => {
                pending.remove(&lit);
                // A pending literal cannot be assigned yet: if it had become
                // false its premise would be falsified and the scan above
                // would have reported the conflict; if true, the premise
                // would no longer scan as unit.
                assign.bind(lit).expect("pending literal already assigned");
                derived.push((lit, id));
            }
        }
    }
}

/// Unit-propagation entailment: true iff propagating `g` under the negation
/// of every literal in `lits` ends in a conflict. A clashing pair in `lits`
/// refutes immediately.
pub fn unit_refutes(g: &Formula, lits: &[Lit]) -> bool {
    let negated: Vec<Lit> = lits.iter().map(|&l| !l).collect();
    propagate(g, &negated).is_conflict()
}
