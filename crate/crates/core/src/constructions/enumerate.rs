//! Exhaustive search for set-blocked clauses over a formula's vocabulary.

use itertools::Itertools;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};
use crate::redundancy::is_sbc;
use crate::sat::TooLarge;

/// The scan is 3^v over the vocabulary before witness subsets; 16
/// variables is the comfortable ceiling for an interactive run.
pub const DEFAULT_ENUM_VAR_LIMIT: usize = 16;

/// Lists every clause over the variables of `g` with at most
/// `max_clause_size` literals together with every nonempty witness subset
/// on which it is set-blocked with respect to `g`. Clauses enumerate by
/// size, then by variable combination, then by phase pattern (all-positive
/// first); witness subsets by size, then by position within the clause. A
/// clause reappears once per accepted witness.
pub fn enumerate_sbcs(
    g: &Formula,
    max_clause_size: usize,
) -> Result<Vec<(Clause, Vec<Lit>)>, TooLarge> {
    enumerate_sbcs_with(g, max_clause_size, DEFAULT_ENUM_VAR_LIMIT)
}

pub fn enumerate_sbcs_with(
    g: &Formula,
    max_clause_size: usize,
    var_limit: usize,
) -> Result<Vec<(Clause, Vec<Lit>)>, TooLarge> {
    let vars: Vec<Var> = g.vars().into_iter().collect();
    if vars.len() > var_limit {
        return Err(TooLarge {
            vars: vars.len(),
            limit: var_limit,
        });
    }
    let mut out = Vec::new();
    for size in 1..=max_clause_size.min(vars.len()) {
        for combo in vars.iter().combinations(size) {
            for mask in 0u32..1 << size {
                let lits: Vec<Lit> = combo
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if mask >> i & 1 == 0 {
                            v.positive()
                        } else {
                            v.negative()
                        }
                    })
                    .collect();
                let c = Clause::new(lits.iter().copied()).expect("variables are distinct");
                for wsize in 1..=size {
                    for witness in lits.iter().copied().combinations(wsize) {
                        let blocked =
                            is_sbc(&c, &witness, g).expect("witness drawn from the clause");
                        if blocked {
                            out.push((c.clone(), witness));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
