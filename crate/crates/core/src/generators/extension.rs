//! Extension sequences: fresh variables defined as conjunctions of two
//! literals over the preceding vocabulary, and the proof objects that pair
//! such a sequence with a resolution refutation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};
use crate::proofs::Proof;

/// One definition x <-> left AND right. The three defining clauses are
/// {-x, left}, {-x, right}, {x, -left, -right}; when left = right the last
/// collapses to two literals and the first two coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionTriple {
    pub var: Var,
    pub left: Lit,
    pub right: Lit,
}

impl ExtensionTriple {
    pub fn new(var: Var, left: Lit, right: Lit) -> ExtensionTriple {
        ExtensionTriple { var, left, right }
    }

    /// The defining clauses in canonical id order, duplicates included so
    /// positions stay aligned with clause numbering.
    pub fn clauses(&self) -> [Clause; 3] {
        let x = self.var;
        let c = |lits: Vec<Lit>| Clause::new(lits).expect("defining clause is not tautological");
        [
            c(vec![x.negative(), self.left]),
            c(vec![x.negative(), self.right]),
            c(vec![x.positive(), !self.left, !self.right]),
        ]
    }
}

/// An ordered list of extension triples; each may use the original
/// vocabulary and all earlier extension variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtensionSeq {
    pub triples: Vec<ExtensionTriple>,
}

impl ExtensionSeq {
    pub fn new(triples: Vec<ExtensionTriple>) -> ExtensionSeq {
        ExtensionSeq { triples }
    }

    pub fn empty() -> ExtensionSeq {
        ExtensionSeq::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn vars(&self) -> Vec<Var> {
        self.triples.iter().map(|t| t.var).collect()
    }

    /// All defining clauses in id order, three per triple, duplicates kept.
    pub fn clauses_in_id_order(&self) -> Vec<Clause> {
        self.triples.iter().flat_map(|t| t.clauses()).collect()
    }

    /// The defining clauses as a set, first occurrence order.
    pub fn distinct_clauses(&self) -> Vec<Clause> {
        let mut seen = Formula::empty();
        for c in self.clauses_in_id_order() {
            seen.insert(c);
        }
        seen.clauses().to_vec()
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("triple {triple}: extension variable {var} is not fresh")]
    VariableNotFresh { triple: usize, var: Var },
    #[error("triple {triple}: source literal over {var} is outside the preceding vocabulary")]
    SourceOutOfScope { triple: usize, var: Var },
    #[error("triple {triple}: source literals are complementary")]
    ComplementarySources { triple: usize },
}

/// Checks the scoping discipline: each extension variable is fresh with
/// respect to the formula and all earlier triples, and each source literal
/// uses the formula's variables or an earlier extension variable. Triples
/// are reported 1-based.
pub fn validate_extension(g: &Formula, ext: &ExtensionSeq) -> Result<(), ExtensionError> {
    let mut scope: BTreeSet<Var> = g.vars();
    for (idx, t) in ext.triples.iter().enumerate() {
        let triple = idx + 1;
        if scope.contains(&t.var) {
            return Err(ExtensionError::VariableNotFresh {
                triple,
                var: t.var,
            });
        }
        for l in [t.left, t.right] {
            if !scope.contains(&l.var()) {
                return Err(ExtensionError::SourceOutOfScope {
                    triple,
                    var: l.var(),
                });
            }
        }
        if t.left == !t.right {
            return Err(ExtensionError::ComplementarySources { triple });
        }
        scope.insert(t.var);
    }
    Ok(())
}

/// An extension-then-resolution proof: the resolution part refutes the
/// input formula together with the defining clauses. Its size counts the
/// distinct defining clauses plus the resolution sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ErProof {
    pub ext: ExtensionSeq,
    pub res: Proof,
}

impl ErProof {
    pub fn new(ext: ExtensionSeq, res: Proof) -> ErProof {
        ErProof { ext, res }
    }

    pub fn size(&self) -> usize {
        self.ext.distinct_clauses().len() + self.res.size()
    }
}
