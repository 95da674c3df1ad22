//! Proof objects and checkers.
//!
//! A proof is a sequence of steps over an input formula. Ids are implicit:
//! input clauses are numbered 1..=|g| in formula order, and every step gets
//! the next id, whether or not its result is a new clause. Redundant-clause
//! additions are checked against the accumulated clause set, which never
//! includes the candidate itself.

mod ger;
mod transform;

pub use ger::{check_ger, GerCertificate};
pub use transform::{normalize_sbc_front, restrict_proof, TransformError};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::clause::{Clause, ResolveError};
use crate::formula::{ClauseId, Formula};
use crate::lit::{Lit, Var};
use crate::redundancy::{bc_failure, rat_failure, sbc_failure, WitnessError};

/// The proof system a proof is checked under. Resolution and weakening are
/// always available; each remaining system admits exactly one kind of
/// redundant addition. None of them may introduce variables beyond the
/// input formula's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    Res,
    Bc,
    Rat,
    Sbc,
}

impl System {
    pub fn allows(self, kind: StepKind) -> bool {
        match kind {
            StepKind::Resolve | StepKind::Weaken => true,
            StepKind::AddBc => self == System::Bc,
            StepKind::AddRat => self == System::Rat,
            StepKind::AddSbc => self == System::Sbc,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            System::Res => "res",
            System::Bc => "bc",
            System::Rat => "rat",
            System::Sbc => "sbc",
        };
        write!(f, "{name}")
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<System, String> {
        match s {
            "res" => Ok(System::Res),
            "bc" => Ok(System::Bc),
            "rat" => Ok(System::Rat),
            "sbc" => Ok(System::Sbc),
            other => Err(format!("unknown proof system {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Resolve,
    Weaken,
    AddBc,
    AddRat,
    AddSbc,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            StepKind::Resolve => "resolve",
            StepKind::Weaken => "weaken",
            StepKind::AddBc => "add-bc",
            StepKind::AddRat => "add-rat",
            StepKind::AddSbc => "add-sbc",
        };
        write!(f, "{name}")
    }
}

/// One proof step. Premise ids refer to earlier clauses; `ClauseId(0)` is
/// reserved for permissive checking, where it asks the checker to search
/// for a premise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Resolve {
        left: ClauseId,
        right: ClauseId,
        pivot: Var,
        result: Clause,
    },
    Weaken {
        premise: ClauseId,
        result: Clause,
    },
    AddBc {
        witness: Lit,
        result: Clause,
    },
    AddRat {
        witness: Lit,
        result: Clause,
    },
    AddSbc {
        witness: Vec<Lit>,
        result: Clause,
    },
}

impl ProofStep {
    pub fn result(&self) -> &Clause {
        match self {
            ProofStep::Resolve { result, .. }
            | ProofStep::Weaken { result, .. }
            | ProofStep::AddBc { result, .. }
            | ProofStep::AddRat { result, .. }
            | ProofStep::AddSbc { result, .. } => result,
        }
    }

    pub fn kind(&self) -> StepKind {
        match self {
            ProofStep::Resolve { .. } => StepKind::Resolve,
            ProofStep::Weaken { .. } => StepKind::Weaken,
            ProofStep::AddBc { .. } => StepKind::AddBc,
            ProofStep::AddRat { .. } => StepKind::AddRat,
            ProofStep::AddSbc { .. } => StepKind::AddSbc,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn new(steps: Vec<ProofStep>) -> Proof {
        Proof { steps }
    }

    /// Proof size: the length of the formula sequence, i.e. steps plus one
    /// for the input formula.
    pub fn size(&self) -> usize {
        self.steps.len() + 1
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub resolve: usize,
    pub weaken: usize,
    pub add_bc: usize,
    pub add_rat: usize,
    pub add_sbc: usize,
}

impl StepStats {
    fn count(&mut self, kind: StepKind) {
        match kind {
            StepKind::Resolve => self.resolve += 1,
            StepKind::Weaken => self.weaken += 1,
            StepKind::AddBc => self.add_bc += 1,
            StepKind::AddRat => self.add_rat += 1,
            StepKind::AddSbc => self.add_sbc += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    StepNotAllowed { kind: StepKind },
    UnknownId { id: ClauseId },
    NewVariable { var: Var },
    Resolution(ResolveError),
    WrongResolvent { expected: Clause },
    NotWeakening { premise: ClauseId },
    NoPremiseFound,
    CriterionFailed { criterion: StepKind, partner: ClauseId },
    Witness(WitnessError),
    EmptyClauseMissing,
    KeptIdInvalid { id: ClauseId },
    BlockedOrderDuplicate { clause: Clause },
    RemovedClauseNotCovered { id: ClauseId },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::StepNotAllowed { kind } => {
                write!(f, "step kind {kind} is not part of this system")
            }
            RejectReason::UnknownId { id } => write!(f, "premise id {id} has not been assigned"),
            RejectReason::NewVariable { var } => {
                write!(f, "variable {var} does not occur in the input formula")
            }
            RejectReason::Resolution(e) => write!(f, "{e}"),
            RejectReason::WrongResolvent { expected } => {
                write!(f, "stated result differs from the resolvent {expected}")
            }
            RejectReason::NotWeakening { premise } => {
                write!(f, "result is not a superset of premise {premise}")
            }
            RejectReason::NoPremiseFound => write!(f, "no premises produce the stated result"),
            RejectReason::CriterionFailed { criterion, partner } => {
                write!(f, "{criterion} criterion fails against clause {partner}")
            }
            RejectReason::Witness(e) => write!(f, "{e}"),
            RejectReason::EmptyClauseMissing => {
                write!(f, "the empty clause was never derived")
            }
            RejectReason::KeptIdInvalid { id } => {
                write!(f, "kept id {id} is not an input clause id")
            }
            RejectReason::BlockedOrderDuplicate { clause } => {
                write!(f, "clause {clause} listed twice in the blocked ordering")
            }
            RejectReason::RemovedClauseNotCovered { id } => {
                write!(f, "removed input clause {id} never re-derived as blocked")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// `step` is the 1-based index of the offending step; for generalized
    /// extension certificates it counts within the rejected phase.
    Rejected { step: usize, reason: RejectReason },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// Formula-sequence size: steps plus one; for certificates, extension
    /// clauses plus resolution size.
    pub size: usize,
    pub stats: StepStats,
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted)
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// When set, acceptance requires the empty clause in the final formula.
    pub require_empty_clause: bool,
    /// Variables permitted in addition to the input formula's. Empty for
    /// the systems proper; used by callers that check proof fragments over
    /// an extended vocabulary.
    pub extra_vars: BTreeSet<Var>,
    /// Permits premise ids of 0, asking the checker to search earlier
    /// clauses for ones that produce the stated result.
    pub permissive: bool,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            require_empty_clause: true,
            extra_vars: BTreeSet::new(),
            permissive: false,
        }
    }
}

/// Accumulated clause database: one entry per id, plus the clause set for
/// redundancy checks, plus the first id holding each distinct clause so
/// criterion failures can be reported in id space.
pub(crate) struct CheckDb {
    by_id: Vec<Clause>,
    set: Formula,
    first_id: Vec<ClauseId>,
    allowed: BTreeSet<Var>,
}

impl CheckDb {
    pub(crate) fn new(g: &Formula, extra_vars: &BTreeSet<Var>) -> CheckDb {
        let mut allowed = g.vars();
        allowed.extend(extra_vars.iter().copied());
        let mut db = CheckDb {
            by_id: Vec::new(),
            set: Formula::empty(),
            first_id: Vec::new(),
            allowed,
        };
        for (_, c) in g.iter() {
            db.push(c.clone());
        }
        db
    }

    pub(crate) fn push(&mut self, c: Clause) -> ClauseId {
        let id = ClauseId(self.by_id.len() as u32 + 1);
        self.by_id.push(c.clone());
        let before = self.set.len();
        self.set.insert(c);
        if self.set.len() > before {
            self.first_id.push(id);
        }
        id
    }

    pub(crate) fn get(&self, id: ClauseId) -> Option<&Clause> {
        if id.0 == 0 {
            return None;
        }
        self.by_id.get(id.0 as usize - 1)
    }

    pub(crate) fn set(&self) -> &Formula {
        &self.set
    }

    /// Translates an id within the deduplicated set back to the first
    /// proof-level id that introduced the clause.
    pub(crate) fn to_proof_id(&self, set_id: ClauseId) -> ClauseId {
        self.first_id[set_id.0 as usize - 1]
    }

    fn check_vars(&self, c: &Clause) -> Result<(), RejectReason> {
        for var in c.vars() {
            if !self.allowed.contains(&var) {
                return Err(RejectReason::NewVariable { var });
            }
        }
        Ok(())
    }

    fn check_witness_vars(&self, lits: &[Lit]) -> Result<(), RejectReason> {
        for lit in lits {
            if !self.allowed.contains(&lit.var()) {
                return Err(RejectReason::NewVariable { var: lit.var() });
            }
        }
        Ok(())
    }

    fn resolve_step(
        &self,
        left: ClauseId,
        right: ClauseId,
        pivot: Var,
        result: &Clause,
        permissive: bool,
    ) -> Result<(), RejectReason> {
        if permissive && (left.0 == 0 || right.0 == 0) {
            return self.search_resolvent(left, right, pivot, result);
        }
        let c = self.get(left).ok_or(RejectReason::UnknownId { id: left })?;
        let d = self
            .get(right)
            .ok_or(RejectReason::UnknownId { id: right })?;
        let r = c.resolvent(d, pivot).map_err(RejectReason::Resolution)?;
        if &r != result {
            return Err(RejectReason::WrongResolvent { expected: r });
        }
        Ok(())
    }

    fn search_resolvent(
        &self,
        left: ClauseId,
        right: ClauseId,
        pivot: Var,
        result: &Clause,
    ) -> Result<(), RejectReason> {
        let candidates = |fixed: ClauseId| -> Vec<&Clause> {
            match self.get(fixed) {
                Some(c) => vec![c],
                None => self.by_id.iter().collect(),
            }
        };
        for c in candidates(left) {
            for d in candidates(right) {
                if let Ok(r) = c.resolvent(d, pivot) {
                    if &r == result {
                        return Ok(());
                    }
                }
            }
        }
        Err(RejectReason::NoPremiseFound)
    }

    fn weaken_step(
        &self,
        premise: ClauseId,
        result: &Clause,
        permissive: bool,
    ) -> Result<(), RejectReason> {
        if permissive && premise.0 == 0 {
            if self.by_id.iter().any(|c| c.subset_of(result)) {
                return Ok(());
            }
            return Err(RejectReason::NoPremiseFound);
        }
        let c = self
            .get(premise)
            .ok_or(RejectReason::UnknownId { id: premise })?;
        if !c.subset_of(result) {
            return Err(RejectReason::NotWeakening { premise });
        }
        Ok(())
    }

    /// Validates one step against the current database without pushing it.
    pub(crate) fn validate(
        &self,
        step: &ProofStep,
        permissive: bool,
    ) -> Result<(), RejectReason> {
        self.check_vars(step.result())?;
        match step {
            ProofStep::Resolve {
                left,
                right,
                pivot,
                result,
            } => self.resolve_step(*left, *right, *pivot, result, permissive),
            ProofStep::Weaken { premise, result } => {
                self.weaken_step(*premise, result, permissive)
            }
            ProofStep::AddBc { witness, result } => {
                self.check_witness_vars(&[*witness])?;
                match bc_failure(result, *witness, &self.set).map_err(RejectReason::Witness)? {
                    None => Ok(()),
                    Some(partner) => Err(RejectReason::CriterionFailed {
                        criterion: StepKind::AddBc,
                        partner: self.to_proof_id(partner),
                    }),
                }
            }
            ProofStep::AddRat { witness, result } => {
                self.check_witness_vars(&[*witness])?;
                match rat_failure(result, *witness, &self.set).map_err(RejectReason::Witness)? {
                    None => Ok(()),
                    Some(partner) => Err(RejectReason::CriterionFailed {
                        criterion: StepKind::AddRat,
                        partner: self.to_proof_id(partner),
                    }),
                }
            }
            ProofStep::AddSbc { witness, result } => {
                self.check_witness_vars(witness)?;
                match sbc_failure(result, witness, &self.set).map_err(RejectReason::Witness)? {
                    None => Ok(()),
                    Some(partner) => Err(RejectReason::CriterionFailed {
                        criterion: StepKind::AddSbc,
                        partner: self.to_proof_id(partner),
                    }),
                }
            }
        }
    }
}

/// Checks a proof under the given system with default options: strict
/// premise ids, no extra variables, empty clause required.
pub fn check(system: System, g: &Formula, proof: &Proof) -> CheckReport {
    check_with(system, g, proof, &CheckOptions::default())
}

pub fn check_with(
    system: System,
    g: &Formula,
    proof: &Proof,
    opts: &CheckOptions,
) -> CheckReport {
    let mut db = CheckDb::new(g, &opts.extra_vars);
    run_steps(&mut db, system, &proof.steps, opts, proof.size())
}

/// Validates a step sequence against an already-seeded database; `size` is
/// reported as-is, letting callers count seeded extension clauses.
pub(crate) fn run_steps(
    db: &mut CheckDb,
    system: System,
    steps: &[ProofStep],
    opts: &CheckOptions,
    size: usize,
) -> CheckReport {
    let mut stats = StepStats::default();
    for (idx, step) in steps.iter().enumerate() {
        let verdict = |reason| CheckReport {
            verdict: Verdict::Rejected {
                step: idx + 1,
                reason,
            },
            size,
            stats,
        };
        if !system.allows(step.kind()) {
            return verdict(RejectReason::StepNotAllowed { kind: step.kind() });
        }
        if let Err(reason) = db.validate(step, opts.permissive) {
            return verdict(reason);
        }
        stats.count(step.kind());
        db.push(step.result().clone());
    }
    if opts.require_empty_clause && !db.set.contains_empty_clause() {
        return CheckReport {
            verdict: Verdict::Rejected {
                step: steps.len(),
                reason: RejectReason::EmptyClauseMissing,
            },
            size,
            stats,
        };
    }
    CheckReport {
        verdict: Verdict::Accepted,
        size,
        stats,
    }
}
