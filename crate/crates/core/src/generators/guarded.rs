//! Guarded formula transformations: copies of the input formula guarded by
//! fresh variables, either directly or through definition-shaped pair
//! clauses.

use thiserror::Error;

use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("variable {var} collides with the construction's vocabulary")]
pub struct VariableCollision {
    pub var: Var,
}

fn or_lit(c: &Clause, l: Lit) -> Clause {
    Clause::new(c.iter().chain(std::iter::once(l))).expect("guard variable is fresh")
}

fn require_fresh(taken: &mut std::collections::BTreeSet<Var>, v: Var) -> Result<(), VariableCollision> {
    if !taken.insert(v) {
        return Err(VariableCollision { var: v });
    }
    Ok(())
}

/// The input formula plus, for each guard variable x, both guarded copies
/// x OR C and -x OR C of every input clause. Insertion order: the input,
/// then per guard the positive copies, then the negative copies.
pub fn gen_g(g: &Formula, xs: &[Var]) -> Result<Formula, VariableCollision> {
    let mut taken = g.vars();
    for &x in xs {
        require_fresh(&mut taken, x)?;
    }
    let mut out = Formula::empty();
    for (_, c) in g.iter() {
        out.insert(c.clone());
    }
    for &x in xs {
        for (_, c) in g.iter() {
            out.insert(or_lit(c, x.positive()));
        }
        for (_, c) in g.iter() {
            out.insert(or_lit(c, x.negative()));
        }
    }
    Ok(out)
}

/// Fresh variable pairs (y_j, z_j) for the pair-guarded transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardedPairLayout {
    ys: Vec<Var>,
    zs: Vec<Var>,
}

impl GuardedPairLayout {
    pub fn new(ys: Vec<Var>, zs: Vec<Var>) -> GuardedPairLayout {
        assert_eq!(ys.len(), zs.len(), "pair lists must have equal length");
        GuardedPairLayout { ys, zs }
    }

    /// m pairs numbered upward from `max`: y's first, then z's.
    pub fn fresh_after(max: u32, m: u32) -> GuardedPairLayout {
        let ys = (1..=m).map(|j| Var::new(max + j)).collect();
        let zs = (1..=m).map(|j| Var::new(max + m + j)).collect();
        GuardedPairLayout { ys, zs }
    }

    pub fn pair_count(&self) -> usize {
        self.ys.len()
    }

    /// 1-based accessors.
    pub fn y(&self, j: usize) -> Var {
        self.ys[j - 1]
    }

    pub fn z(&self, j: usize) -> Var {
        self.zs[j - 1]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.ys.iter().chain(self.zs.iter()).copied()
    }
}

/// The pair-guarded transformation. On top of the input formula it adds,
/// for every guard x_i and pair j, the linking clauses
/// {x_i, y_j, -z_j} and {-x_i, y_j, -z_j}, and per pair j the block
/// {-y_j, z_j} plus both guarded copies y_j OR C and -z_j OR C of every
/// input clause. Insertion order: input, linking clauses (guards outer,
/// pairs inner, positive before negative), then the per-pair blocks.
pub fn gen_i(
    g: &Formula,
    xs: &[Var],
    pairs: &GuardedPairLayout,
) -> Result<Formula, VariableCollision> {
    let mut taken = g.vars();
    for &x in xs {
        require_fresh(&mut taken, x)?;
    }
    for v in pairs.vars() {
        require_fresh(&mut taken, v)?;
    }
    let mut out = Formula::empty();
    for (_, c) in g.iter() {
        out.insert(c.clone());
    }
    for &x in xs {
        for j in 1..=pairs.pair_count() {
            let tail = [pairs.y(j).positive(), pairs.z(j).negative()];
            for guard in [x.positive(), x.negative()] {
                let lits = std::iter::once(guard).chain(tail);
                out.insert(Clause::new(lits).expect("fresh variables cannot clash"));
            }
        }
    }
    for j in 1..=pairs.pair_count() {
        out.insert(
            Clause::new([pairs.y(j).negative(), pairs.z(j).positive()])
                .expect("a pair uses two distinct variables"),
        );
        for (_, c) in g.iter() {
            out.insert(or_lit(c, pairs.y(j).positive()));
        }
        for (_, c) in g.iter() {
            out.insert(or_lit(c, pairs.z(j).negative()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause;
    use crate::sat::equisatisfiable;

    fn vars(ids: &[u32]) -> Vec<Var> {
        ids.iter().map(|&v| Var::new(v)).collect()
    }

    fn base() -> Formula {
        Formula::from_clauses([clause![1, 2], clause![-1, 2], clause![-2]])
    }

    #[test]
    fn no_guards_reproduces_the_input() {
        let g = base();
        assert_eq!(gen_g(&g, &[]).unwrap(), g);
    }

    #[test]
    fn guarded_copies_multiply_the_clause_count() {
        let g = base();
        for t in 1..=3 {
            let xs = vars(&(10..10 + t).collect::<Vec<_>>());
            let gg = gen_g(&g, &xs).unwrap();
            assert_eq!(gg.len(), g.len() * (2 * t as usize + 1));
        }
    }

    #[test]
    fn guard_projections_recover_the_input_exactly() {
        let g = base();
        let xs = vars(&[10, 11]);
        let gg = gen_g(&g, &xs).unwrap();
        for &x in &xs {
            assert!(gg.project(x.positive()).same_clauses(&g));
            assert!(gg.project(x.negative()).same_clauses(&g));
        }
    }

    #[test]
    fn guard_variables_must_be_fresh_and_distinct() {
        let g = base();
        assert_eq!(
            gen_g(&g, &vars(&[2])),
            Err(VariableCollision { var: Var::new(2) })
        );
        assert_eq!(
            gen_g(&g, &vars(&[10, 10])),
            Err(VariableCollision { var: Var::new(10) })
        );
        let pairs = GuardedPairLayout::fresh_after(10, 1);
        assert_eq!(
            gen_i(&g, &vars(&[11]), &pairs),
            Err(VariableCollision { var: Var::new(11) })
        );
    }

    #[test]
    fn pair_guarded_count_matches_the_construction() {
        // c input clauses, t guards, m pairs: c + 2tm + m(1 + 2c) clauses.
        let g = base();
        let c = g.len();
        for (t, m) in [(1usize, 1u32), (1, 2), (2, 3)] {
            let xs = vars(&(20..20 + t as u32).collect::<Vec<_>>());
            let pairs = GuardedPairLayout::fresh_after(30, m);
            let ii = gen_i(&g, &xs, &pairs).unwrap();
            let m = m as usize;
            assert_eq!(ii.len(), c + 2 * t * m + m * (1 + 2 * c));
        }
    }

    #[test]
    fn pair_guard_projections() {
        let g = base();
        let xs = vars(&[10]);
        let pairs = GuardedPairLayout::fresh_after(10, 2);
        let ii = gen_i(&g, &xs, &pairs).unwrap();
        let links = Formula::from_clauses((1..=2).map(|j| {
            Clause::new([pairs.y(j).positive(), pairs.z(j).negative()]).unwrap()
        }));
        // Both guard polarities project onto the pair links, exactly.
        assert!(ii.project(xs[0].positive()).same_clauses(&links));
        assert!(ii.project(xs[0].negative()).same_clauses(&links));
        // The guarded copies project back onto the input, among others.
        for j in 1..=2 {
            let from_y = ii.project(pairs.y(j).positive());
            let from_z = ii.project(pairs.z(j).negative());
            for (_, c) in g.iter() {
                assert!(from_y.contains(c));
                assert!(from_z.contains(c));
            }
        }
    }

    #[test]
    fn transformations_preserve_satisfiability_status() {
        let unsat = base();
        let sat = Formula::from_clauses([clause![1, 2], clause![-1]]);
        for g in [unsat, sat] {
            let xs = vars(&[10]);
            let gg = gen_g(&g, &xs).unwrap();
            assert!(equisatisfiable(&g, &gg).unwrap());
            let pairs = GuardedPairLayout::fresh_after(10, 2);
            let ii = gen_i(&g, &xs, &pairs).unwrap();
            assert!(equisatisfiable(&g, &ii).unwrap());
        }
    }
}
