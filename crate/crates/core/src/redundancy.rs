//! Clause-redundancy criteria: blocked clauses, resolution asymmetric
//! tautologies (RAT), and set-blocked clauses, plus witness search.
//!
//! All checks run against a fixed formula `g` and never consult the
//! candidate clause itself; callers decide whether `g` already contains it.
//! Partner clauses are scanned in clause-id order, so the first failing
//! partner reported by the `*_failure` variants is deterministic.

use thiserror::Error;

use crate::assignment::Assignment;
use crate::clause::Clause;
use crate::formula::{ClauseId, Formula};
use crate::lit::{Lit, Var};
use crate::propagation::unit_refutes;

use itertools::Itertools;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness literal {lit} does not occur in the clause")]
    WitnessNotInClause { lit: Lit },
    #[error("set-blocking witness must be nonempty")]
    EmptyWitness,
    #[error("derived assignment is inconsistent on variable {var}")]
    InconsistentDerivedAssignment { var: Var },
}

/// A redundancy witness: the literal a clause is blocked or RAT on, or the
/// nonempty literal subset it is set-blocked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Literal(Lit),
    Set(Vec<Lit>),
}

fn union_tautological(c: &Clause, d: &Clause) -> bool {
    c.iter().any(|l| d.contains(!l))
}

/// Blocked-clause check on witness `p`: every clause of `g` containing `!p`
/// must form a tautological union with `c` after removing the clashing pair.
/// Returns the first failing partner, or `None` when `c` is blocked.
pub fn bc_failure(c: &Clause, p: Lit, g: &Formula) -> Result<Option<ClauseId>, WitnessError> {
    if !c.contains(p) {
        return Err(WitnessError::WitnessNotInClause { lit: p });
    }
    let c_rest = c.without(p);
    for (id, d) in g.iter() {
        if d.contains(!p) && !union_tautological(&c_rest, &d.without(!p)) {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

pub fn is_bc(c: &Clause, p: Lit, g: &Formula) -> Result<bool, WitnessError> {
    bc_failure(c, p, g).map(|f| f.is_none())
}

/// RAT check on witness `p`: for every clause `d` of `g` containing `!p`,
/// the combined literals of `c` and `d` minus the clashing pair must be
/// refutable by unit propagation over `g`. Tautological unions refute
/// trivially, so every blocked clause is a RAT.
pub fn rat_failure(c: &Clause, p: Lit, g: &Formula) -> Result<Option<ClauseId>, WitnessError> {
    if !c.contains(p) {
        return Err(WitnessError::WitnessNotInClause { lit: p });
    }
    let c_rest = c.without(p);
    for (id, d) in g.iter() {
        if !d.contains(!p) {
            continue;
        }
        let combined: Vec<Lit> = c_rest.iter().chain(d.without(!p).iter()).collect();
        if !unit_refutes(g, &combined) {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

pub fn is_rat(c: &Clause, p: Lit, g: &Formula) -> Result<bool, WitnessError> {
    rat_failure(c, p, g).map(|f| f.is_none())
}

fn validate_sbc_witness(c: &Clause, l: &[Lit]) -> Result<(), WitnessError> {
    if l.is_empty() {
        return Err(WitnessError::EmptyWitness);
    }
    for &lit in l {
        if !c.contains(lit) {
            return Err(WitnessError::WitnessNotInClause { lit });
        }
    }
    Ok(())
}

/// Set-blocked check on witness set `l`: partners are the clauses of `g`
/// that intersect the negation of `l` but not `l` itself; for each, the
/// union of `c` minus `l` and the partner minus the negated witness literals
/// must be tautological. Returns the first failing partner.
pub fn sbc_failure(c: &Clause, l: &[Lit], g: &Formula) -> Result<Option<ClauseId>, WitnessError> {
    validate_sbc_witness(c, l)?;
    let negated: Vec<Lit> = l.iter().map(|&lit| !lit).collect();
    let c_rest = c.without_all(l);
    for (id, d) in g.iter() {
        let touches_negation = negated.iter().any(|&nl| d.contains(nl));
        let touches_witness = l.iter().any(|&wl| d.contains(wl));
        if touches_negation
            && !touches_witness
            && !union_tautological(&c_rest, &d.without_all(&negated))
        {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

pub fn is_sbc(c: &Clause, l: &[Lit], g: &Formula) -> Result<bool, WitnessError> {
    sbc_failure(c, l, g).map(|f| f.is_none())
}

/// First literal of `c` (canonical order) on which `c` is blocked.
pub fn find_bc_witness(c: &Clause, g: &Formula) -> Option<Lit> {
    c.iter()
        .find(|&p| is_bc(c, p, g).expect("witness drawn from the clause"))
}

pub const DEFAULT_MAX_WITNESS_SET: usize = 4;

/// Smallest witness set on which `c` is set-blocked, searching subsets of
/// `c` in size order and lexicographic order within a size, capped at
/// `max_size` literals.
pub fn find_sbc_witness(c: &Clause, g: &Formula, max_size: usize) -> Option<Vec<Lit>> {
    let lits = c.literals();
    for size in 1..=max_size.min(lits.len()) {
        for combo in lits.iter().copied().combinations(size) {
            if is_sbc(c, &combo, g).expect("witness drawn from the clause") {
                return Some(combo);
            }
        }
    }
    None
}

/// Projection criterion for set-blocking: for every witness literal `p`, the
/// assignment that satisfies `l` and falsifies the rest of `c` must satisfy
/// the projection of `g` onto `!p`. Set-blocked clauses always pass.
pub fn sbc_projection_check(c: &Clause, l: &[Lit], g: &Formula) -> Result<bool, WitnessError> {
    validate_sbc_witness(c, l)?;
    let rest = c.without_all(l);
    let mut derived = Assignment::from_lits(l.iter().copied())
        .map_err(|e| WitnessError::InconsistentDerivedAssignment { var: e.var })?;
    for lit in rest.iter() {
        derived
            .bind(!lit)
            .map_err(|e| WitnessError::InconsistentDerivedAssignment { var: e.var })?;
    }
    for &p in l {
        if !derived.satisfies_formula(&g.project(!p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projection characterization of blocking: `c` is blocked on `p` iff the
/// assignment falsifying the rest of `c` satisfies the projection of `g`
/// onto `!p`.
pub fn bc_projection_check(c: &Clause, p: Lit, g: &Formula) -> Result<bool, WitnessError> {
    if !c.contains(p) {
        return Err(WitnessError::WitnessNotInClause { lit: p });
    }
    let falsifying = c.without(p).falsifying_assignment();
    Ok(falsifying.satisfies_formula(&g.project(!p)))
}
