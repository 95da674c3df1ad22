//! Compiling extended-resolution refutations into the redundancy systems.
//!
//! An extended-resolution refutation of g is an [`ErProof`]: a validated
//! extension sequence plus a resolution refutation of g with the defining
//! clauses appended (three ids per triple, in definition order). The
//! builders here replay such a refutation in three other shapes:
//!
//! - the defining clauses alone as blocked-clause additions over g,
//! - a RAT refutation of the guard product of g and the extension
//!   variables, matching the source proof's size,
//! - a generalized-extension certificate for the pair-guarded variant,
//!   again matching the source proof's size.
//!
//! Every builder re-checks its output and panics if the check fails, so a
//! returned object is always accepted by the corresponding checker.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::{ClauseId, Formula};
use crate::generators::{
    gen_g, gen_i, validate_extension, ErProof, ExtensionError, ExtensionSeq, GuardedPairLayout,
    VariableCollision,
};
use crate::lit::Lit;
use crate::proofs::{
    check, check_ger, check_with, run_steps, CheckDb, CheckOptions, CheckReport, GerCertificate,
    Proof, ProofStep, RejectReason, System, Verdict,
};
use crate::sat::TooLarge;

use super::dp::{dp_resolution_oracle, DpOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    /// The resolution part does not refute the input plus its extension
    /// clauses; `step` indexes the offending resolution step.
    #[error("not an accepted extended-resolution refutation: step {step}: {reason}")]
    NotAnErProof { step: usize, reason: RejectReason },
    #[error(transparent)]
    Collision(#[from] VariableCollision),
    /// The input together with its extension clauses has a model, so no
    /// refutation exists.
    #[error("the formula is satisfiable; there is nothing to refute")]
    Satisfiable,
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

/// Checks an extended-resolution refutation of `g`: the extension must
/// validate, and the resolution part must derive the empty clause. Ids
/// continue past the input clauses with three per triple in definition
/// order; duplicated defining clauses still consume an id. The reported
/// size counts distinct defining clauses plus the resolution size.
pub fn check_er(g: &Formula, er: &ErProof) -> Result<CheckReport, ExtensionError> {
    validate_extension(g, &er.ext)?;
    let extra: BTreeSet<_> = er.ext.vars().into_iter().collect();
    let mut db = CheckDb::new(g, &extra);
    for c in er.ext.clauses_in_id_order() {
        db.push(c);
    }
    Ok(run_steps(
        &mut db,
        System::Res,
        &er.res.steps,
        &CheckOptions::default(),
        er.size(),
    ))
}

fn require_er(g: &Formula, er: &ErProof) -> Result<(), ConstructionError> {
    let report = check_er(g, er)?;
    match report.verdict {
        Verdict::Accepted => Ok(()),
        Verdict::Rejected { step, reason } => {
            Err(ConstructionError::NotAnErProof { step, reason })
        }
    }
}

/// Derives the defining clauses of `ext` as blocked-clause additions over
/// `g`, per triple: the positive clause first, blocked vacuously because
/// the fresh variable has no negative occurrence yet, then the two binding
/// clauses, whose only partner is the positive clause and whose resolvents
/// with it are tautological. The returned proof is accepted by the
/// blocked-clause checker with the extension variables allowed.
pub fn derive_extension_as_bc(g: &Formula, ext: &ExtensionSeq) -> Result<Proof, ExtensionError> {
    validate_extension(g, ext)?;
    let mut steps = Vec::with_capacity(ext.len() * 3);
    for triple in &ext.triples {
        let [left, right, positive] = triple.clauses();
        steps.push(ProofStep::AddBc {
            witness: triple.var.positive(),
            result: positive,
        });
        steps.push(ProofStep::AddBc {
            witness: triple.var.negative(),
            result: left,
        });
        steps.push(ProofStep::AddBc {
            witness: triple.var.negative(),
            result: right,
        });
    }
    let proof = Proof::new(steps);
    let opts = CheckOptions {
        require_empty_clause: false,
        extra_vars: ext.vars().into_iter().collect(),
        permissive: false,
    };
    let report = check_with(System::Bc, g, &proof, &opts);
    assert!(
        report.is_accepted(),
        "defining clauses must check as blocked: {:?}",
        report.verdict
    );
    Ok(proof)
}

/// Replays an extended-resolution refutation of `g` as a RAT refutation of
/// the guard product over the extension variables. Each defining clause is
/// a RAT addition there: every guard partner x or -x carries a clause of
/// `g` alongside it, which unit propagation falsifies outright. Duplicated
/// defining clauses are added once, so the output size never exceeds the
/// source proof's size.
pub fn simulate_er_in_rat_minus(g: &Formula, er: &ErProof) -> Result<Proof, ConstructionError> {
    require_er(g, er)?;
    let xs = er.ext.vars();
    let gg = gen_g(g, &xs).expect("extension variables are fresh for g");
    let c = g.len() as u32;
    let mut id_map: Vec<ClauseId> = (1..=c).map(ClauseId).collect();
    let mut next = gg.len() as u32;
    let mut steps = Vec::new();
    for triple in &er.ext.triples {
        let [left, right, positive] = triple.clauses();
        let dup = left == right;
        next += 1;
        let left_id = ClauseId(next);
        steps.push(ProofStep::AddRat {
            witness: triple.var.negative(),
            result: left,
        });
        let right_id = if dup {
            left_id
        } else {
            next += 1;
            steps.push(ProofStep::AddRat {
                witness: triple.var.negative(),
                result: right,
            });
            ClauseId(next)
        };
        next += 1;
        steps.push(ProofStep::AddRat {
            witness: triple.var.positive(),
            result: positive,
        });
        id_map.extend([left_id, right_id, ClauseId(next)]);
    }
    for step in &er.res.steps {
        steps.push(remap_step(step, &id_map));
        next += 1;
        id_map.push(ClauseId(next));
    }
    let proof = Proof::new(steps);
    let report = check(System::Rat, &gg, &proof);
    assert!(
        report.is_accepted(),
        "guard-product replay must check under RAT: {:?}",
        report.verdict
    );
    assert!(
        proof.size() <= er.size(),
        "replay may not exceed the source proof size"
    );
    Ok(proof)
}

/// Compiles an extended-resolution refutation of `g` into a certificate
/// for the pair-guarded product over the extension variables. The kept
/// clauses are `g` and the pair-linking block; the blocked ordering lists
/// the defining clauses (per triple: positive clause, then the bindings)
/// followed by the removed guard clauses, each blocked on its pair's first
/// variable; the resolution part is the source refutation with ids moved
/// to the blocked entries. Certificate size equals the source proof size.
pub fn build_ger_proof(
    g: &Formula,
    er: &ErProof,
    pairs: &GuardedPairLayout,
) -> Result<GerCertificate, ConstructionError> {
    require_er(g, er)?;
    assert!(
        er.ext.is_empty() || pairs.pair_count() >= 1,
        "a nonempty extension needs at least one guard pair"
    );
    let xs = er.ext.vars();
    let ii = gen_i(g, &xs, pairs)?;
    let c = g.len() as u32;
    let guard_count = 2 * xs.len() as u32 * pairs.pair_count() as u32;
    let total = ii.len() as u32;
    let kept: Vec<ClauseId> = (1..=c)
        .chain(c + guard_count + 1..=total)
        .map(ClauseId)
        .collect();

    let mut blocked: Vec<(Lit, Clause)> = Vec::new();
    let mut id_map: Vec<ClauseId> = (1..=c).map(ClauseId).collect();
    for triple in &er.ext.triples {
        let [left, right, positive] = triple.clauses();
        let dup = left == right;
        blocked.push((triple.var.positive(), positive));
        let pos_id = ClauseId(total + blocked.len() as u32);
        blocked.push((triple.var.negative(), left));
        let left_id = ClauseId(total + blocked.len() as u32);
        let right_id = if dup {
            left_id
        } else {
            blocked.push((triple.var.negative(), right));
            ClauseId(total + blocked.len() as u32)
        };
        id_map.extend([left_id, right_id, pos_id]);
    }
    // Re-derive the removed guard clauses in input order; each is blocked
    // on its pair's first variable, whose only negative occurrence is the
    // pair-linking clause.
    for &x in &xs {
        for j in 1..=pairs.pair_count() {
            for guard in [x.positive(), x.negative()] {
                let link = Clause::new([guard, pairs.y(j).positive(), pairs.z(j).negative()])
                    .expect("guard and pair literals are distinct");
                blocked.push((pairs.y(j).positive(), link));
            }
        }
    }

    let mut next = total + blocked.len() as u32;
    let mut resolution = Vec::with_capacity(er.res.steps.len());
    for step in &er.res.steps {
        resolution.push(remap_step(step, &id_map));
        next += 1;
        id_map.push(ClauseId(next));
    }
    let cert = GerCertificate {
        kept,
        blocked,
        resolution,
    };
    let report = check_ger(&ii, &cert);
    assert!(
        report.is_accepted(),
        "pair-guarded certificate must check: {:?}",
        report.verdict
    );
    assert_eq!(
        cert.size(&ii),
        er.size(),
        "certificate size must equal the source proof size"
    );
    Ok(cert)
}

/// Builds an accepted extended-resolution refutation of `g` with the given
/// extension by running the elimination oracle on `g` plus the distinct
/// defining clauses and renumbering its proof into extension ids.
pub fn er_from_dp(g: &Formula, ext: ExtensionSeq) -> Result<ErProof, ConstructionError> {
    validate_extension(g, &ext)?;
    let c = g.len() as u32;
    let mut full = Formula::empty();
    let mut full_to_er: Vec<ClauseId> = Vec::new();
    for (id, clause) in g.iter() {
        full.insert(clause.clone());
        full_to_er.push(id);
    }
    for (pos, clause) in ext.clauses_in_id_order().into_iter().enumerate() {
        let before = full.len();
        full.insert(clause);
        if full.len() > before {
            full_to_er.push(ClauseId(c + pos as u32 + 1));
        }
    }
    let refutation = match dp_resolution_oracle(&full)? {
        DpOutcome::Refuted(proof) => proof,
        DpOutcome::Satisfiable(_) => return Err(ConstructionError::Satisfiable),
    };

    let step_base = c + 3 * ext.len() as u32;
    let mut map = full_to_er;
    let mut steps = Vec::with_capacity(refutation.steps.len());
    for (s, step) in refutation.steps.iter().enumerate() {
        steps.push(remap_step(step, &map));
        map.push(ClauseId(step_base + s as u32 + 1));
    }
    let er = ErProof::new(ext, Proof::new(steps));
    let report = check_er(g, &er).expect("extension already validated");
    assert!(
        report.is_accepted(),
        "renumbered oracle refutation must check: {:?}",
        report.verdict
    );
    Ok(er)
}

/// Rewrites premise ids through `map`; results are untouched. Only
/// resolution and weakening steps occur in the replayed refutations.
fn remap_step(step: &ProofStep, map: &[ClauseId]) -> ProofStep {
    let tr = |id: ClauseId| map[id.0 as usize - 1];
    match step {
        ProofStep::Resolve {
            left,
            right,
            pivot,
            result,
        } => ProofStep::Resolve {
            left: tr(*left),
            right: tr(*right),
            pivot: *pivot,
            result: result.clone(),
        },
        ProofStep::Weaken { premise, result } => ProofStep::Weaken {
            premise: tr(*premise),
            result: result.clone(),
        },
        other => unreachable!("refutation parts hold no {} steps", other.kind()),
    }
}
