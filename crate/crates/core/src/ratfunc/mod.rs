//! Rational functions in `t` over a cyclotomic field, fractional linear
//! maps, and partial fractions against a known pole set.

mod modgcd;
mod moebius;
mod partial;
mod poly;
mod ratfn;

pub use moebius::{Moebius, ProjPoint};
pub use partial::{partial_fractions, residue_at, residue_at_infinity, PartialFractions};
pub use poly::Poly;
pub use ratfn::{ratfn_arith, RatFn, RatFnOp};
