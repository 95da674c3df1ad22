//! Bit pigeonhole formulas: n+1 pigeons, n = 2^bits holes, each pigeon's
//! hole encoded by `bits` boolean variables.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::assignment::Assignment;
use crate::clause::Clause;
use crate::formula::Formula;
use crate::lit::{Lit, Var};

/// Variable layout for a bit pigeonhole instance. Pigeon x's bits occupy
/// variables (x-1)*bits+1 ..= x*bits, row-major, so the mapping between
/// (pigeon, bit) pairs and 1..=(n+1)*bits is a bijection. Bit 1 is the
/// least significant bit of the hole number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BphpLayout {
    bits: u32,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("variable {var} is outside the pigeon layout")]
pub struct UnknownVariable {
    pub var: Var,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("cannot place {requested} pigeons into {holes} holes without collisions")]
pub struct TooManyPigeons {
    pub requested: u32,
    pub holes: u32,
}

impl BphpLayout {
    /// Panics when `bits` is 0 or large enough that the variable count
    /// overflows u32; generators stay far below that.
    pub fn new(bits: u32) -> BphpLayout {
        assert!((1..=20).contains(&bits), "bits per pigeon out of range");
        BphpLayout { bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn holes(&self) -> u32 {
        1 << self.bits
    }

    pub fn pigeons(&self) -> u32 {
        self.holes() + 1
    }

    pub fn var_count(&self) -> u32 {
        self.pigeons() * self.bits
    }

    /// Variable for pigeon `x` (1-based), bit `bit` (1-based).
    pub fn var_of(&self, x: u32, bit: u32) -> Var {
        assert!((1..=self.pigeons()).contains(&x), "pigeon out of range");
        assert!((1..=self.bits).contains(&bit), "bit out of range");
        Var::new((x - 1) * self.bits + bit)
    }

    /// Inverse of `var_of`.
    pub fn pigeon_bit(&self, v: Var) -> Result<(u32, u32), UnknownVariable> {
        let raw = v.id();
        if raw > self.var_count() {
            return Err(UnknownVariable { var: v });
        }
        let x = (raw - 1) / self.bits + 1;
        let bit = (raw - 1) % self.bits + 1;
        Ok((x, bit))
    }

    /// The literal asserting that pigeon x's hole differs from `hole` at
    /// `bit`: positive when the hole's bit is 0, negated when it is 1.
    pub fn avoiding_lit(&self, x: u32, bit: u32, hole: u32) -> Lit {
        let v = self.var_of(x, bit);
        if hole >> (bit - 1) & 1 == 0 {
            v.positive()
        } else {
            v.negative()
        }
    }

    /// The input clause forbidding pigeons x and y from both sitting in
    /// `hole`: some bit of x or of y differs from the hole string.
    pub fn clause_avoiding(&self, x: u32, y: u32, hole: u32) -> Clause {
        assert!(x != y, "a pair of pigeons must be distinct");
        assert!(hole < self.holes(), "hole out of range");
        let lits: Vec<Lit> = (1..=self.bits)
            .map(|b| self.avoiding_lit(x, b, hole))
            .chain((1..=self.bits).map(|b| self.avoiding_lit(y, b, hole)))
            .collect();
        Clause::new(lits).expect("distinct pigeons use distinct variables")
    }

    /// The distinct pigeons whose variables the clause mentions.
    pub fn mentions(&self, c: &Clause) -> Result<BTreeSet<u32>, UnknownVariable> {
        c.iter()
            .map(|l| self.pigeon_bit(l.var()).map(|(x, _)| x))
            .collect()
    }

    pub fn pigeon_width(&self, c: &Clause) -> Result<usize, UnknownVariable> {
        Ok(self.mentions(c)?.len())
    }

    /// L(x): the largest subset of the literal set mentioning only pigeon
    /// x. Order of the input is preserved.
    pub fn restrict_to_pigeon(
        &self,
        lits: &[Lit],
        x: u32,
    ) -> Result<Vec<Lit>, UnknownVariable> {
        let mut part = Vec::new();
        for &l in lits {
            if self.pigeon_bit(l.var())?.0 == x {
                part.push(l);
            }
        }
        Ok(part)
    }

    /// Assignment placing each listed pigeon into its paired hole, all bits
    /// set.
    pub fn matching_assignment(&self, pairs: &[(u32, u32)]) -> Assignment {
        let mut lits = Vec::new();
        for &(x, hole) in pairs {
            assert!(hole < self.holes(), "hole out of range");
            for bit in 1..=self.bits {
                let v = self.var_of(x, bit);
                lits.push(if hole >> (bit - 1) & 1 == 1 {
                    v.positive()
                } else {
                    v.negative()
                });
            }
        }
        Assignment::from_lits(lits).expect("each pigeon is assigned once")
    }

    /// A uniformly random partial matching of `m` pigeons to pairwise
    /// distinct holes, deterministic per seed.
    pub fn random_matching(
        &self,
        m: u32,
        seed: u64,
    ) -> Result<Vec<(u32, u32)>, TooManyPigeons> {
        if m > self.holes() {
            return Err(TooManyPigeons {
                requested: m,
                holes: self.holes(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pigeons = sample(&mut rng, self.pigeons() as usize, m as usize);
        let holes = sample(&mut rng, self.holes() as usize, m as usize);
        Ok(pigeons
            .iter()
            .zip(holes.iter())
            .map(|(x, h)| (x as u32 + 1, h as u32))
            .collect())
    }

    pub fn random_partial_matching(
        &self,
        m: u32,
        seed: u64,
    ) -> Result<Assignment, TooManyPigeons> {
        Ok(self.matching_assignment(&self.random_matching(m, seed)?))
    }
}

/// The bit pigeonhole contradiction: every two pigeons avoid every hole.
/// Exactly one clause per unordered pigeon pair and hole.
pub fn gen_bphp(bits: u32) -> (Formula, BphpLayout) {
    let layout = BphpLayout::new(bits);
    let mut g = Formula::empty();
    for x in 1..=layout.pigeons() {
        for y in (x + 1)..=layout.pigeons() {
            for hole in 0..layout.holes() {
                g.insert(layout.clause_avoiding(x, y, hole));
            }
        }
    }
    (g, layout)
}

/// Hole-count front end: for n that is not a power of two, generates the
/// instance for the largest power of two not exceeding n.
pub fn gen_bphp_holes(n: u32) -> (Formula, BphpLayout) {
    assert!(n >= 2, "need at least two holes");
    let bits = 31 - n.leading_zeros();
    gen_bphp(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clause;
    use crate::sat::{brute_force_sat, SatVerdict};

    #[test]
    fn one_bit_instance_is_the_six_clause_contradiction() {
        let (g, layout) = gen_bphp(1);
        assert_eq!(g.len(), 6);
        assert_eq!(layout.var_count(), 3);
        let expected = Formula::from_clauses([
            clause![1, 2],
            clause![-1, -2],
            clause![1, 3],
            clause![-1, -3],
            clause![2, 3],
            clause![-2, -3],
        ]);
        assert!(g.same_clauses(&expected));
        assert_eq!(brute_force_sat(&g).unwrap(), SatVerdict::Unsatisfiable);
    }

    #[test]
    fn clause_count_is_pairs_times_holes() {
        for bits in 1..=3 {
            let (g, layout) = gen_bphp(bits);
            let p = layout.pigeons();
            assert_eq!(g.len() as u32, p * (p - 1) / 2 * layout.holes());
            assert_eq!(g.max_var().unwrap().id(), layout.var_count());
        }
    }

    #[test]
    fn every_input_clause_mentions_two_pigeons() {
        let (g, layout) = gen_bphp(2);
        for (_, c) in g.iter() {
            assert_eq!(layout.pigeon_width(c).unwrap(), 2);
            assert_eq!(c.len() as u32, 2 * layout.bits());
        }
    }

    #[test]
    fn var_of_and_pigeon_bit_are_inverse() {
        let layout = BphpLayout::new(3);
        for x in 1..=layout.pigeons() {
            for bit in 1..=layout.bits() {
                let v = layout.var_of(x, bit);
                assert_eq!(layout.pigeon_bit(v).unwrap(), (x, bit));
            }
        }
        let outside = Var::new(layout.var_count() + 1);
        assert_eq!(
            layout.pigeon_bit(outside),
            Err(UnknownVariable { var: outside })
        );
    }

    #[test]
    fn pigeon_parts_partition_a_literal_set() {
        let layout = BphpLayout::new(1);
        let lits = crate::lits![1, -2, 3];
        let mut total = 0;
        for x in 1..=layout.pigeons() {
            let part = layout.restrict_to_pigeon(&lits, x).unwrap();
            total += part.len();
            for l in part {
                assert_eq!(layout.pigeon_bit(l.var()).unwrap().0, x);
            }
        }
        assert_eq!(total, lits.len());
    }

    #[test]
    fn empty_clause_has_width_zero() {
        let layout = BphpLayout::new(1);
        assert_eq!(layout.pigeon_width(&Clause::empty()).unwrap(), 0);
    }

    #[test]
    fn matchings_are_deterministic_and_collision_free() {
        let layout = BphpLayout::new(2);
        let a = layout.random_matching(3, 9).unwrap();
        let b = layout.random_matching(3, 9).unwrap();
        assert_eq!(a, b);
        let pigeons: BTreeSet<u32> = a.iter().map(|&(x, _)| x).collect();
        let holes: BTreeSet<u32> = a.iter().map(|&(_, h)| h).collect();
        assert_eq!(pigeons.len(), 3);
        assert_eq!(holes.len(), 3);
        assert!(layout.random_matching(5, 0).is_err());
        assert!(layout
            .random_partial_matching(0, 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn matching_never_falsifies_an_input_clause() {
        let (g, layout) = gen_bphp(2);
        for seed in 0..5 {
            let a = layout.random_partial_matching(2, seed).unwrap();
            let restricted = g.restrict(&a);
            assert!(!restricted.contains_empty_clause());
        }
    }

    #[test]
    fn full_matching_restriction_is_unsatisfiable() {
        // Two pigeons pinned to the two holes leave the third with nowhere
        // to go.
        let (g, layout) = gen_bphp(1);
        let a = layout.random_partial_matching(2, 1).unwrap();
        let restricted = g.restrict(&a);
        assert_eq!(
            brute_force_sat(&restricted).unwrap(),
            SatVerdict::Unsatisfiable
        );
    }

    #[test]
    fn hole_count_front_end_rounds_down_to_a_power_of_two() {
        assert_eq!(gen_bphp_holes(2).1.bits(), 1);
        assert_eq!(gen_bphp_holes(3).1.bits(), 1);
        assert_eq!(gen_bphp_holes(4).1.bits(), 2);
        assert_eq!(gen_bphp_holes(7).1.bits(), 2);
        assert_eq!(gen_bphp_holes(8).1.bits(), 3);
    }
}
