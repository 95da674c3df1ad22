//! Toolkit for resolution-based clause-redundancy proof systems.
//!
//! The crate models CNF formulas and proofs that extend resolution with
//! redundant-clause additions: blocked clauses, resolution asymmetric
//! tautologies, and set-blocked clauses, all without new variables, plus a
//! generalized-extension variant whose certificates carry a blocked
//! extension next to a resolution proof. It ships the pigeonhole-style
//! benchmark family these systems are usually compared on, two guarded
//! formula transformations with known short proofs, and brute-force oracles
//! sized for desk experiments.

pub mod assignment;
pub mod clause;
pub mod constructions;
pub mod dimacs;
pub mod formula;
pub mod generators;
pub mod lit;
pub mod prooffmt;
pub mod proofs;
pub mod propagation;
pub mod redundancy;
pub mod sat;

pub use assignment::{Assignment, InconsistentAssignment};
pub use clause::{Clause, ResolveError, Restricted, TautologyError};
pub use formula::{ClauseId, Formula};
pub use lit::{Lit, Var};

/// Builds a `Vec<Lit>` from signed DIMACS codes: `lits![1, -2]`.
#[macro_export]
macro_rules! lits {
    ($($code:expr),* $(,)?) => {{
        #[allow(clippy::useless_vec)]
        let lits = vec![$($crate::Lit::from_dimacs($code).expect("literal code must be nonzero")),*];
        lits
    }};
}

/// Builds a `Clause` from signed DIMACS codes, panicking on tautologies:
/// `clause![1, -2]`. Intended for tests and examples.
#[macro_export]
macro_rules! clause {
    ($($code:expr),* $(,)?) => {
        $crate::Clause::new($crate::lits![$($code),*]).expect("tautological clause literal set")
    };
}
