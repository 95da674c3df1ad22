//! Variables and literals with DIMACS-compatible numbering.

use std::fmt;
use std::ops::Not;

/// A propositional variable, identified by a positive integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Creates a variable from its id. Ids start at 1, matching DIMACS.
    ///
    /// Panics if `id` is zero; zero is the clause terminator in every text
    /// format this crate reads, so it can never name a variable.
    pub fn new(id: u32) -> Var {
        assert!(id != 0, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// The positive literal over this variable.
    pub fn positive(self) -> Lit {
        Lit::positive(self)
    }

    /// The negative literal over this variable.
    pub fn negative(self) -> Lit {
        Lit::negative(self)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Var({})", self.0)
    }
}

/// A literal: a variable or its negation, stored as a signed DIMACS code.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn positive(var: Var) -> Lit {
        Lit(var.id() as i32)
    }

    pub fn negative(var: Var) -> Lit {
        Lit(-(var.id() as i32))
    }

    /// Parses a signed DIMACS code. Returns `None` for 0.
    pub fn from_dimacs(code: i32) -> Option<Lit> {
        if code == 0 {
            None
        } else {
            Some(Lit(code))
        }
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// True when `other` is the negation of this literal.
    pub fn clashes_with(self, other: Lit) -> bool {
        self.0 == -other.0
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

/// Orders literals by variable, positive phase before negative. This is the
/// canonical order used for clause storage and witness enumeration.
impl Ord for Lit {
    fn cmp(&self, other: &Lit) -> std::cmp::Ordering {
        (self.var(), self.is_negative()).cmp(&(other.var(), other.is_negative()))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Lit) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lit({})", self.0)
    }
}
