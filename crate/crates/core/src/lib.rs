//! Exact computation of the automorphism group of the N-point ring
//! `C[t, (t - a_1)^-1, ..., (t - a_N)^-1]`, its action on the space of
//! Kähler differentials modulo exact forms, and the decomposition of that
//! action into irreducible representations.

pub mod autgroup;
pub mod cli;
pub mod cyclofield;
pub mod error;
mod expr;
pub mod linalg;
pub mod omega;
pub mod presets;
pub mod ratfunc;
pub mod reptheory;
pub mod verify;

pub use cyclofield::Cyc;
pub use error::{Error, Result};
pub use ratfunc::{Moebius, ProjPoint, RatFn};
