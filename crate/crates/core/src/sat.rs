//! Exhaustive satisfiability oracle for desk-scale formulas.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::assignment::Assignment;
use crate::formula::Formula;
use crate::lit::Var;

/// Default cap on the variable count; 2^20 assignments is comfortably fast.
pub const DEFAULT_VAR_LIMIT: usize = 20;

/// Hard cap so the assignment counter always fits in a u64 bitmask.
const HARD_VAR_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatVerdict {
    /// A model: the total assignment over the formula's variables with the
    /// lowest counter value, counting variable `i` (ascending) as bit `i`.
    Satisfiable(Assignment),
    Unsatisfiable,
}

impl SatVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatVerdict::Satisfiable(_))
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("formula has {vars} variables, above the brute-force limit {limit}")]
pub struct TooLarge {
    pub vars: usize,
    pub limit: usize,
}

/// Decides satisfiability by scanning all assignments over the formula's
/// variables, in ascending counter order.
pub fn brute_force_sat(g: &Formula) -> Result<SatVerdict, TooLarge> {
    brute_force_sat_with(g, DEFAULT_VAR_LIMIT, 1)
}

pub fn brute_force_sat_with(
    g: &Formula,
    var_limit: usize,
    threads: usize,
) -> Result<SatVerdict, TooLarge> {
    let vars: Vec<Var> = g.vars().into_iter().collect();
    let limit = var_limit.min(HARD_VAR_LIMIT);
    if vars.len() > limit {
        return Err(TooLarge {
            vars: vars.len(),
            limit,
        });
    }
    if g.contains_empty_clause() {
        return Ok(SatVerdict::Unsatisfiable);
    }

    // Bit i of the counter is the value of vars[i]. A clause is satisfied
    // when a positive literal's bit is set or a negative literal's is clear.
    let masks: Vec<(u64, u64)> = g
        .clauses()
        .iter()
        .map(|c| {
            let mut pos = 0u64;
            let mut neg = 0u64;
            for lit in c.iter() {
                let i = vars.binary_search(&lit.var()).expect("clause var in formula vars");
                if lit.is_positive() {
                    pos |= 1 << i;
                } else {
                    neg |= 1 << i;
                }
            }
            (pos, neg)
        })
        .collect();

    let total: u64 = 1u64 << vars.len();
    let found = if threads <= 1 || total < 1024 {
        scan(&masks, 0, total)
    } else {
        scan_parallel(&masks, total, threads)
    };
    Ok(match found {
        Some(counter) => SatVerdict::Satisfiable(model_of(&vars, counter)),
        None => SatVerdict::Unsatisfiable,
    })
}

fn satisfied(masks: &[(u64, u64)], counter: u64) -> bool {
    masks
        .iter()
        .all(|&(pos, neg)| counter & pos != 0 || !counter & neg != 0)
}

fn scan(masks: &[(u64, u64)], from: u64, to: u64) -> Option<u64> {
    (from..to).find(|&m| satisfied(masks, m))
}

/// Splits the counter range into contiguous chunks and returns the lowest
/// satisfying counter overall, so the result is independent of thread count.
fn scan_parallel(masks: &[(u64, u64)], total: u64, threads: usize) -> Option<u64> {
    let chunk = total.div_ceil(threads as u64);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let from = (t * chunk).min(total);
                let to = ((t + 1) * chunk).min(total);
                s.spawn(move || scan(masks, from, to))
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("scan thread panicked"))
            .min()
    })
}

fn model_of(vars: &[Var], counter: u64) -> Assignment {
    let mut a = Assignment::empty();
    for (i, &v) in vars.iter().enumerate() {
        let lit = if counter >> i & 1 == 1 {
            v.positive()
        } else {
            v.negative()
        };
        a.bind(lit).expect("distinct variables never clash");
    }
    a
}

/// Convenience wrapper used by invariant checks: equisatisfiability of two
/// formulas under the default limits.
pub fn equisatisfiable(g: &Formula, h: &Formula) -> Result<bool, TooLarge> {
    Ok(brute_force_sat(g)?.is_sat() == brute_force_sat(h)?.is_sat())
}

/// All total assignments over a fixed variable set, in counter order.
/// Intended for exhaustive desk-scale checks.
pub fn all_assignments(vars: &BTreeSet<Var>) -> impl Iterator<Item = Assignment> + '_ {
    let vars: Vec<Var> = vars.iter().copied().collect();
    assert!(vars.len() <= HARD_VAR_LIMIT);
    (0..1u64 << vars.len()).map(move |m| model_of(&vars, m))
}
