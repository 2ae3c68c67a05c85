//! GF(2) polynomial arithmetic and extension-field arithmetic.

mod berlekamp;
mod field;
mod poly;

pub use berlekamp::{berlekamp_massey, linear_complexity};
pub use field::{solve_artin_schreier, FieldElement};
pub use poly::{euclid_quotients, EuclidChain, Gf2Poly, PRIMITIVITY_DEGREE_BOUND};

use crate::error::Result;

/// Irreducible polynomials of exactly the given degree, ascending by
/// coefficient mask.
pub fn irreducibles_of_degree(degree: usize) -> Vec<Gf2Poly> {
    assert!(degree >= 1 && degree < 30, "enumeration is desk scale");
    let lo = 1u64 << degree;
    (lo..lo << 1)
        .map(|mask| Gf2Poly::from_int(mask as u128))
        .filter(Gf2Poly::is_irreducible)
        .collect()
}

/// Lexicographically smallest primitive polynomial of the given degree.
pub fn default_primitive(degree: usize) -> Result<Gf2Poly> {
    assert!(degree >= 1, "degree must be positive");
    let lo = 1u64 << degree;
    for mask in lo..lo << 1 {
        let p = Gf2Poly::from_int(mask as u128);
        if p.is_irreducible() && p.is_primitive()? {
            return Ok(p);
        }
    }
    unreachable!("a primitive polynomial exists for every degree");
}
