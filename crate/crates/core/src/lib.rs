//! Linear machines over GF(2): hybrid 90/150 cellular automata, LFSRs,
//! elementary CA generators, and pseudo-random sequence evaluation.
//!
//! The crate synthesizes null-boundary 90/150 hybrid cellular automata
//! from irreducible polynomials, simulates elementary CA / LHCA / LFSR
//! sequence generators, scores their output (Walsh correlation immunity,
//! entropy, FIPS-style batteries) and realizes trace-monomial boolean
//! functions as composed linear machines.

pub mod bits;
pub mod boolfunc;
pub mod ca;
pub mod error;
pub mod eval;
pub mod gf2;
pub mod lfsr;
pub mod lhca;

pub use bits::Bits;
pub use error::{Error, Result};
pub use gf2::{FieldElement, Gf2Poly};
