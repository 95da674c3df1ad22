//! Formula families and construction inputs: the bit pigeonhole
//! contradiction with its pigeon/bit layout, extension sequences, and the
//! guarded transformations that embed a formula under fresh guard
//! variables.

mod bphp;
mod extension;
mod guarded;

pub use bphp::{
    gen_bphp, gen_bphp_holes, BphpLayout, TooManyPigeons, UnknownVariable,
};
pub use extension::{
    validate_extension, ErProof, ExtensionError, ExtensionSeq, ExtensionTriple,
};
pub use guarded::{gen_g, gen_i, GuardedPairLayout, VariableCollision};
