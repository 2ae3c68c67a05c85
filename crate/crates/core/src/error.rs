//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors surfaced by polynomial, machine and evaluation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("field elements have different moduli: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },

    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),

    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),

    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("state space of {bits} bits exceeds the enumeration bound of {bound} bits")]
    StateSpaceBound { bits: usize, bound: usize },

    #[error("cell index {index} out of range for {len} cells")]
    CellIndex { index: usize, len: usize },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("synthesis invariant violated for {poly}: {detail}")]
    SynthesisInvariant { poly: String, detail: String },

    #[error("exponent {s} is conjugate to 1 modulo 2^{n} - 1: the parity-check product degenerates")]
    ConjugateCollision { s: u64, n: usize },

    #[error("{family} condition violated: {detail}")]
    FamilyCondition { family: &'static str, detail: String },

    #[error("sequence too short: need {needed} bits, got {got}")]
    InsufficientLength { needed: usize, got: usize },
}

impl Error {
    /// Shorthand for parse/validation failures.
    pub fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
