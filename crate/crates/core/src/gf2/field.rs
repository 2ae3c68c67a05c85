//! Extension-field arithmetic modulo an irreducible polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::poly::Gf2Poly;

/// Below this extension degree the even-characteristic Artin-Schreier
/// equation is solved by exhaustive search; above it by a linear solve.
const ARTIN_SCHREIER_SEARCH_BOUND: usize = 16;

/// A residue class modulo an irreducible polynomial.
///
/// The value is kept reduced; the modulus is validated once at
/// construction and shared by every derived element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: Gf2Poly,
    modulus: Gf2Poly,
}

impl FieldElement {
    /// Builds an element of GF(2)[x]/(modulus), reducing `value`.
    ///
    /// The modulus must be irreducible of degree >= 1.
    pub fn new(value: Gf2Poly, modulus: Gf2Poly) -> Result<Self> {
        if !modulus.is_irreducible() {
            return Err(Error::NotIrreducible(modulus.to_string()));
        }
        Ok(FieldElement {
            value: value.rem(&modulus)?,
            modulus,
        })
    }

    /// The residue of `x`, the canonical field generator candidate.
    pub fn generator(modulus: Gf2Poly) -> Result<Self> {
        FieldElement::new(Gf2Poly::x(), modulus)
    }

    /// Another element of the same field, skipping modulus revalidation.
    pub fn in_same_field(&self, value: Gf2Poly) -> Self {
        FieldElement {
            value: value.rem(&self.modulus).expect("nonzero modulus"),
            modulus: self.modulus.clone(),
        }
    }

    pub fn zero_of(&self) -> Self {
        self.in_same_field(Gf2Poly::zero())
    }

    pub fn one_of(&self) -> Self {
        self.in_same_field(Gf2Poly::one())
    }

    pub fn value(&self) -> &Gf2Poly {
        &self.value
    }

    pub fn modulus(&self) -> &Gf2Poly {
        &self.modulus
    }

    /// Extension degree n of the field GF(2^n).
    pub fn field_degree(&self) -> usize {
        self.modulus.degree().expect("modulus has degree >= 1")
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_same_field(&self, rhs: &Self) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.to_string(),
                right: rhs.modulus.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        Ok(self.in_same_field(self.value.clone() + rhs.value.clone()))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        Ok(self.in_same_field(self.value.mul_mod(&rhs.value, &self.modulus)?))
    }

    /// `self^e` by square and multiply; `a^0 = 1` including for zero.
    pub fn pow(&self, e: u128) -> Self {
        self.in_same_field(
            self.value
                .pow_mod(e, &self.modulus)
                .expect("nonzero modulus"),
        )
    }

    /// Frobenius square.
    pub fn square(&self) -> Self {
        self.in_same_field(
            self.value
                .mul_mod(&self.value, &self.modulus)
                .expect("nonzero modulus"),
        )
    }

    /// The trace map onto the base field: a + a^2 + a^4 + ... + a^(2^(n-1)).
    pub fn trace(&self) -> bool {
        let n = self.field_degree();
        let mut acc = Gf2Poly::zero();
        let mut term = self.clone();
        for _ in 0..n {
            acc = acc + term.value.clone();
            term = term.square();
        }
        debug_assert!(acc.degree().map_or(true, |d| d == 0));
        acc.constant_term()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field_degree() as u32;
        // a^(2^n - 2) = a^(-1) in GF(2^n).
        Some(self.pow((1u128 << n) - 2))
    }

    /// Minimal polynomial over GF(2): the product of `x + a^(2^j)` over the
    /// conjugate set of `a`. Zero maps to `x`.
    pub fn minimal_polynomial(&self) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::x();
        }
        // Collect the distinct Frobenius conjugates.
        let mut conjugates = vec![self.clone()];
        let mut next = self.square();
        while next != *self {
            conjugates.push(next.clone());
            next = next.square();
        }
        // Expand prod (x + c) with coefficients in the field; they are
        // Frobenius-invariant, hence land in the base field.
        let mut coeffs = vec![self.one_of()];
        for c in &conjugates {
            let mut widened = vec![self.zero_of(); coeffs.len() + 1];
            for (i, k) in coeffs.iter().enumerate() {
                widened[i + 1] = widened[i + 1].add(k).expect("same field");
                let scaled = k.mul(c).expect("same field");
                widened[i] = widened[i].add(&scaled).expect("same field");
            }
            coeffs = widened;
        }
        let mut out = Gf2Poly::zero();
        for (i, k) in coeffs.iter().enumerate() {
            debug_assert!(k.value.degree().map_or(true, |d| d == 0));
            if k.value.constant_term() {
                out = out + Gf2Poly::monomial(i);
            }
        }
        out
    }

    /// Evaluates a base-field polynomial at this element (Horner).
    pub fn evaluate(&self, p: &Gf2Poly) -> Self {
        let mut acc = self.zero_of();
        if let Some(deg) = p.degree() {
            for i in (0..=deg).rev() {
                acc = acc.mul(self).expect("same field");
                if p.coeff(i) {
                    acc = acc.add(&self.one_of()).expect("same field");
                }
            }
        }
        acc
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Solves `z^2 + z = c` in the field of `c`.
///
/// Returns the empty set when `trace(c) = 1`, otherwise exactly the two
/// solutions `z` and `z + 1`. Odd extension degree uses the half-trace;
/// even degree falls back to exhaustive search at small size and to a
/// GF(2)-linear solve above [`ARTIN_SCHREIER_SEARCH_BOUND`].
pub fn solve_artin_schreier(c: &FieldElement) -> Vec<FieldElement> {
    if c.trace() {
        return Vec::new();
    }
    let n = c.field_degree();
    let z = if n % 2 == 1 {
        half_trace(c)
    } else if n < ARTIN_SCHREIER_SEARCH_BOUND {
        search_solution(c)
    } else {
        linear_solve(c)
    };
    debug_assert_eq!(z.square().add(&z).unwrap(), *c);
    let z1 = z.add(&z.one_of()).expect("same field");
    let mut out = vec![z, z1];
    out.sort_by_key(|e| e.value().support().first().copied());
    out.dedup();
    out
}

/// Half-trace sum c^(4^i) for odd extension degree.
fn half_trace(c: &FieldElement) -> FieldElement {
    let n = c.field_degree();
    let mut acc = c.zero_of();
    let mut term = c.clone();
    for _ in 0..=(n - 1) / 2 {
        acc = acc.add(&term).expect("same field");
        term = term.square().square();
    }
    acc
}

fn search_solution(c: &FieldElement) -> FieldElement {
    let n = c.field_degree();
    for mask in 0u64..1 << n {
        let z = c.in_same_field(Gf2Poly::from_int(mask as u128));
        if z.square().add(&z).expect("same field") == *c {
            return z;
        }
    }
    unreachable!("trace(c) = 0 guarantees a solution exists");
}

/// Gaussian elimination on the GF(2)-linear map z -> z^2 + z.
fn linear_solve(c: &FieldElement) -> FieldElement {
    let n = c.field_degree();
    // Column j: image of the basis monomial x^j, stored as a bit row per
    // output coordinate. rows[i] bit j = coefficient i of phi(x^j).
    let mut rows = vec![0u64; n];
    for j in 0..n {
        let basis = c.in_same_field(Gf2Poly::monomial(j));
        let image = basis.square().add(&basis).expect("same field");
        for (i, row) in rows.iter_mut().enumerate() {
            if image.value().coeff(i) {
                *row |= 1 << j;
            }
        }
    }
    let mut rhs: Vec<bool> = (0..n).map(|i| c.value().coeff(i)).collect();
    // Forward elimination with partial pivoting by column.
    let mut pivot_of_col = vec![usize::MAX; n];
    let mut row_idx = 0;
    for col in 0..n {
        if let Some(p) = (row_idx..n).find(|&r| rows[r] >> col & 1 == 1) {
            rows.swap(row_idx, p);
            rhs.swap(row_idx, p);
            for r in 0..n {
                if r != row_idx && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[row_idx];
                    rhs[r] ^= rhs[row_idx];
                }
            }
            pivot_of_col[col] = row_idx;
            row_idx += 1;
        }
    }
    let mut solution = 0u64;
    for col in 0..n {
        if pivot_of_col[col] != usize::MAX && rhs[pivot_of_col[col]] {
            solution |= 1 << col;
        }
    }
    c.in_same_field(Gf2Poly::from_int(solution as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    fn elem(v: &str, m: &str) -> FieldElement {
        FieldElement::new(poly(v), poly(m)).unwrap()
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(matches!(
            FieldElement::new(poly("x"), poly("x^2+1")),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn mul_in_gf4() {
        // x^2 = x + 1 mod x^2+x+1
        let a = elem("x", "x^2+x+1");
        assert_eq!(a.mul(&a).unwrap().value(), &poly("x+1"));
    }

    #[test]
    fn pow_edges() {
        let a = elem("x^2+x", "x^4+x+1");
        assert_eq!(a.pow(0), a.one_of());
        // Lagrange: order divides 2^4 - 1
        assert_eq!(a.pow(15), a.one_of());
        let mut by_iteration = a.one_of();
        for _ in 0..15 {
            by_iteration = by_iteration.mul(&a).unwrap();
        }
        assert_eq!(by_iteration, a.one_of());
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = elem("x", "x^2+x+1");
        let b = elem("x", "x^3+x+1");
        assert!(matches!(
            a.mul(&b),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn trace_examples() {
        assert!(!elem("0", "x^2+x+1").trace());
        // alpha + alpha^2 = 1 in GF(4)
        assert!(elem("x", "x^2+x+1").trace());
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        // exhaustive over small fields
        for m in ["x+1", "x^2+x+1", "x^3+x+1", "x^4+x+1", "x^5+x^2+1", "x^6+x+1"] {
            let modulus = poly(m);
            let n = modulus.degree().unwrap();
            let one = FieldElement::new(Gf2Poly::one(), modulus.clone()).unwrap();
            let all: Vec<FieldElement> = (0..1u64 << n)
                .map(|v| one.in_same_field(Gf2Poly::from_int(v as u128)))
                .collect();
            for a in &all {
                assert_eq!(a.square().trace(), a.trace(), "Tr(a^2) = Tr(a) mod {m}");
            }
            for a in &all {
                for b in &all {
                    assert_eq!(
                        a.add(b).unwrap().trace(),
                        a.trace() ^ b.trace(),
                        "additivity mod {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn artin_schreier_examples() {
        // c = 0 yields {0, 1}
        let zero = elem("0", "x^3+x+1");
        let sols = solve_artin_schreier(&zero);
        assert_eq!(sols.len(), 2);
        assert!(sols.contains(&zero.zero_of()) && sols.contains(&zero.one_of()));

        // GF(4): trace(alpha) = 1, no solution
        assert!(solve_artin_schreier(&elem("x", "x^2+x+1")).is_empty());

        // GF(8): alpha^3 = alpha + 1 has trace 1, so no solution; alpha has
        // trace 0 and exactly two. Cross-check both against brute force.
        for (power, count) in [(3u128, 0usize), (1, 2)] {
            let c = elem("x", "x^3+x+1").pow(power);
            let sols = solve_artin_schreier(&c);
            let brute: Vec<FieldElement> = (0..8u64)
                .map(|v| c.in_same_field(Gf2Poly::from_int(v as u128)))
                .filter(|z| z.square().add(z).unwrap() == c)
                .collect();
            assert_eq!(sols.len(), count);
            assert_eq!(brute.len(), count);
            for s in &brute {
                assert!(sols.contains(s));
            }
        }
    }

    #[test]
    fn artin_schreier_matches_brute_force_everywhere_small() {
        // Both parities and both even-degree code paths are covered by the
        // dedicated linear-solve test below.
        for m in ["x^2+x+1", "x^3+x+1", "x^4+x+1", "x^5+x^2+1", "x^6+x+1"] {
            let one = FieldElement::new(Gf2Poly::one(), poly(m)).unwrap();
            let n = one.field_degree();
            for v in 0..1u64 << n {
                let c = one.in_same_field(Gf2Poly::from_int(v as u128));
                let mut expected: Vec<FieldElement> = (0..1u64 << n)
                    .map(|w| one.in_same_field(Gf2Poly::from_int(w as u128)))
                    .filter(|z| z.square().add(z).unwrap() == c)
                    .collect();
                let mut got = solve_artin_schreier(&c);
                let key = |e: &FieldElement| e.value().to_hex();
                expected.sort_by_key(key);
                got.sort_by_key(key);
                assert_eq!(got, expected, "c = {c} mod {m}");
            }
        }
    }

    #[test]
    fn linear_solve_agrees_with_search_on_even_degree() {
        let one = FieldElement::new(Gf2Poly::one(), poly("x^6+x+1")).unwrap();
        for v in 0..64u64 {
            let c = one.in_same_field(Gf2Poly::from_int(v as u128));
            if c.trace() {
                continue;
            }
            let z = linear_solve(&c);
            assert_eq!(z.square().add(&z).unwrap(), c, "c = {c}");
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let alpha = elem("x", "x^3+x+1");
        assert_eq!(alpha.minimal_polynomial(), poly("x^3+x+1"));
        assert_eq!(alpha.pow(3).minimal_polynomial(), poly("x^3+x^2+1"));
        assert_eq!(alpha.one_of().minimal_polynomial(), poly("x+1"));
        assert_eq!(alpha.zero_of().minimal_polynomial(), poly("x"));
    }

    #[test]
    fn minimal_polynomial_annihilates_exhaustively() {
        for m in ["x+1", "x^2+x+1", "x^3+x+1", "x^4+x+1", "x^5+x^2+1", "x^6+x+1"] {
            let one = FieldElement::new(Gf2Poly::one(), poly(m)).unwrap();
            let n = one.field_degree();
            for v in 0..1u64 << n {
                let a = one.in_same_field(Gf2Poly::from_int(v as u128));
                let mp = a.minimal_polynomial();
                assert!(mp.is_irreducible(), "m_a irreducible for {a} mod {m}");
                assert!(a.evaluate(&mp).is_zero(), "m_a(a) = 0 for {a} mod {m}");
            }
        }
    }
}
