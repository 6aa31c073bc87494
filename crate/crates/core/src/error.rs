use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("unexpected pole: denominator factor {factor} has a root outside the pole set")]
    UnexpectedPole { factor: String },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("automorphism group is underdetermined: {0}")]
    Underdetermined(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("group closure exceeded {bound} elements")]
    NotFinite { bound: usize },

    #[error("not a Klein group: {0}")]
    NotKlein(String),

    #[error("class matching failed: {0}")]
    ClassMatching(String),

    #[error("not a character: {0}")]
    NotCharacter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
