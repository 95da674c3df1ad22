//! Constructive proof builders and brute-force oracles.
//!
//! The builders turn an extended-resolution refutation into proofs for the
//! guarded formulas: a RAT proof of the guard product and a generalized
//! extension certificate for the pair-guarded variant. Each builder
//! re-checks its output before returning it, so a successful return is a
//! checked object, not a claim.
//!
//! The oracles supply ground truth at small scale: a Davis-Putnam
//! elimination prover that emits checkable resolution refutations, and an
//! exhaustive enumerator for set-blocked clauses.

mod dp;
mod enumerate;
mod er;

pub use dp::{dp_resolution_oracle, dp_resolution_oracle_with, DpOutcome, DEFAULT_DP_VAR_LIMIT};
pub use enumerate::{enumerate_sbcs, enumerate_sbcs_with, DEFAULT_ENUM_VAR_LIMIT};
pub use er::{
    build_ger_proof, check_er, derive_extension_as_bc, er_from_dp, simulate_er_in_rat_minus,
    ConstructionError,
};
