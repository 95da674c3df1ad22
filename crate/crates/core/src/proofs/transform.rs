//! Proof transformations: hoisting set-blocked additions to the front and
//! restricting resolution proofs under partial assignments.

use thiserror::Error;

use crate::assignment::Assignment;
use crate::clause::{Clause, Restricted};
use crate::formula::{ClauseId, Formula};

use super::{check, CheckReport, Proof, ProofStep, RejectReason, StepKind, System, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("input proof is not accepted: step {step}: {reason}")]
    NotAccepted { step: usize, reason: RejectReason },
    #[error("the assignment satisfies every input clause; nothing remains to prove")]
    RestrictionSatisfiesFormula,
}

fn require_accepted(report: CheckReport) -> Result<(), TransformError> {
    match report.verdict {
        Verdict::Accepted => Ok(()),
        Verdict::Rejected { step, reason } => Err(TransformError::NotAccepted { step, reason }),
    }
}

/// Reorders an accepted set-blocked proof so that every set-blocked addition
/// precedes every resolution and weakening step, preserving the relative
/// order within each group and remapping premise ids. The output has exactly
/// as many steps and is again accepted:
///
/// * a hoisted addition is checked against a subset of the clauses it was
///   originally checked against (only the additions that already preceded
///   it), and set-blocking against fewer clauses means fewer partner
///   clauses to satisfy;
/// * a resolution or weakening step still finds its premises, since
///   additions only moved earlier and derived clauses kept their order.
pub fn normalize_sbc_front(g: &Formula, proof: &Proof) -> Result<Proof, TransformError> {
    require_accepted(check(System::Sbc, g, proof))?;

    let n = g.len() as u32;
    let total_sbc = proof
        .steps
        .iter()
        .filter(|s| s.kind() == StepKind::AddSbc)
        .count() as u32;
    // New 1-based position of each old step, additions first.
    let mut new_pos: Vec<u32> = Vec::with_capacity(proof.steps.len());
    let (mut sbc_seen, mut other_seen) = (0u32, 0u32);
    for step in &proof.steps {
        if step.kind() == StepKind::AddSbc {
            sbc_seen += 1;
            new_pos.push(sbc_seen);
        } else {
            other_seen += 1;
            new_pos.push(total_sbc + other_seen);
        }
    }
    let remap = |id: ClauseId| -> ClauseId {
        if id.0 <= n {
            id
        } else {
            ClauseId(n + new_pos[(id.0 - n - 1) as usize])
        }
    };

    let mut front: Vec<ProofStep> = Vec::new();
    let mut back: Vec<ProofStep> = Vec::new();
    for step in &proof.steps {
        match step {
            ProofStep::AddSbc { .. } => front.push(step.clone()),
            ProofStep::Resolve {
                left,
                right,
                pivot,
                result,
            } => back.push(ProofStep::Resolve {
                left: remap(*left),
                right: remap(*right),
                pivot: *pivot,
                result: result.clone(),
            }),
            ProofStep::Weaken { premise, result } => back.push(ProofStep::Weaken {
                premise: remap(*premise),
                result: result.clone(),
            }),
            ProofStep::AddBc { .. } | ProofStep::AddRat { .. } => {
                unreachable!("accepted under the set-blocked system")
            }
        }
    }
    front.extend(back);
    Ok(Proof::new(front))
}

/// What became of an original clause under the restriction: dropped because
/// the assignment satisfies it, or represented by a surviving clause (a
/// subset of the original minus its falsified literals) at a new id.
type Survivor = Option<(ClauseId, Clause)>;

/// Restricts an accepted resolution proof of `g` under a partial assignment,
/// yielding an accepted resolution proof of the restricted formula with at
/// most as many steps. Each original clause maps to a surviving clause that
/// is a subset of it minus its falsified literals. Steps degenerate rather
/// than translate one-for-one: a step with a satisfied premise is dropped,
/// a resolution whose pivot is assigned or missing from a surviving premise
/// reuses that premise's id, and a weakening reuses its premise. Only
/// resolutions on unassigned pivots with both pivot literals surviving emit
/// a step, so every clause of the output proof stays within the restricted
/// formula's variables.
pub fn restrict_proof(
    g: &Formula,
    proof: &Proof,
    a: &Assignment,
) -> Result<Proof, TransformError> {
    require_accepted(check(System::Res, g, proof))?;

    // Guards degenerate inputs; an accepted refutation's input formula is
    // unsatisfiable, so some clause always survives a consistent assignment.
    let restricted = g.restrict(a);
    if restricted.is_empty() {
        return Err(TransformError::RestrictionSatisfiesFormula);
    }

    let mut old_clauses: Vec<Clause> = g.clauses().to_vec();
    let mut survivor: Vec<Survivor> = Vec::with_capacity(old_clauses.len());
    let mut new_inputs = Formula::empty();
    for c in &old_clauses {
        survivor.push(match c.restrict(a) {
            Restricted::Satisfied => None,
            Restricted::Clause(rc) => {
                let id = new_inputs.insert(rc.clone());
                Some((id, rc))
            }
        });
    }
    debug_assert_eq!(new_inputs, restricted);

    let mut next_id = new_inputs.len() as u32;
    let mut steps: Vec<ProofStep> = Vec::new();

    for step in &proof.steps {
        let entry: Survivor = match step {
            ProofStep::Resolve {
                left,
                right,
                pivot,
                ..
            } => {
                let lc = &old_clauses[left.0 as usize - 1];
                let (pos, neg) = if lc.contains(pivot.positive()) {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                match a.value(pivot.positive()) {
                    // The premise whose pivot literal is falsified loses
                    // only that literal, so its survivor is a subset of the
                    // restricted resolvent: reuse it.
                    Some(value) => {
                        let keep = if value { neg } else { pos };
                        survivor[keep.0 as usize - 1].clone()
                    }
                    None => {
                        match (
                            &survivor[left.0 as usize - 1],
                            &survivor[right.0 as usize - 1],
                        ) {
                            // A satisfied premise has a true literal other
                            // than the unassigned pivot; it carries into the
                            // resolvent, which is satisfied too.
                            (None, _) | (_, None) => None,
                            (Some((lid, ls)), Some((rid, rs))) => {
                                if !ls.contains(pivot.positive()) {
                                    Some((*lid, ls.clone()))
                                } else if !rs.contains(pivot.negative()) {
                                    Some((*rid, rs.clone()))
                                } else {
                                    let r = ls
                                        .resolvent(rs, *pivot)
                                        .expect("subset of a non-tautological resolvent");
                                    next_id += 1;
                                    steps.push(ProofStep::Resolve {
                                        left: *lid,
                                        right: *rid,
                                        pivot: *pivot,
                                        result: r.clone(),
                                    });
                                    Some((ClauseId(next_id), r))
                                }
                            }
                        }
                    }
                }
            }
            ProofStep::Weaken { premise, .. } => survivor[premise.0 as usize - 1].clone(),
            _ => unreachable!("accepted under resolution"),
        };
        survivor.push(entry);
        old_clauses.push(step.result().clone());
    }
    Ok(Proof::new(steps))
}
