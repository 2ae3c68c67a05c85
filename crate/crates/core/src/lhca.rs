//! Linear hybrid 90/150 cellular automata with null boundaries: rule
//! vectors, characteristic polynomials, the synthesis procedure that
//! recovers a machine from an irreducible polynomial, and block-diagonal
//! composition for products of irreducibles.

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::gf2::{euclid_quotients, solve_artin_schreier, FieldElement, Gf2Poly};

/// Per-cell rule selector for a linear hybrid CA: entry `i` is 0 when
/// cell `i` uses rule 90 (xor of the two neighbors) and 1 when it uses
/// rule 150 (xor of the neighbors and the cell itself).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleVector {
    d: Bits,
}

impl RuleVector {
    pub fn new(d: Bits) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::invalid("rule vector", "must select at least one cell"));
        }
        Ok(RuleVector { d })
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when cell `i` uses rule 150.
    pub fn uses_150(&self, i: usize) -> bool {
        self.d.get(i)
    }

    pub fn bits(&self) -> &Bits {
        &self.d
    }

    /// The mirror image [d_{N-1}, ..., d_0].
    pub fn reversal(&self) -> RuleVector {
        RuleVector { d: self.d.mirrored() }
    }

    /// Characteristic polynomial of the machine's tridiagonal transition
    /// matrix, by the three-term recurrence
    /// D_k = (x + d_k) * D_{k-1} + D_{k-2} with D_{-2} = 0, D_{-1} = 1.
    pub fn char_poly(&self) -> Gf2Poly {
        let mut prev2 = Gf2Poly::zero();
        let mut prev1 = Gf2Poly::one();
        for k in 0..self.len() {
            let factor = Gf2Poly::x() + Gf2Poly::from_int(u128::from(self.d.get(k)));
            let next = factor * prev1.clone() + prev2;
            prev2 = prev1;
            prev1 = next;
        }
        prev1
    }

    /// The two characteristic subpolynomials: the one for cells 0..N-2
    /// and the one for cells 1..N-1.
    pub fn subpolynomials(&self) -> Result<(Gf2Poly, Gf2Poly)> {
        let n = self.len();
        if n < 2 {
            return Err(Error::invalid(
                "subpolynomials",
                "rule vector must have at least two cells",
            ));
        }
        let head = RuleVector::new((0..n - 1).map(|i| self.d.get(i)).collect())?;
        let tail = RuleVector::new((1..n).map(|i| self.d.get(i)).collect())?;
        Ok((head.char_poly(), tail.char_poly()))
    }

    /// One synchronous update with null boundaries:
    /// x_i <- x_{i-1} + d_i * x_i + x_{i+1} (virtual zeros outside).
    pub fn step(&self, state: &Bits) -> Result<Bits> {
        let n = self.len();
        if state.len() != n {
            return Err(Error::invalid(
                "state",
                format!("length {} does not match {} cells", state.len(), n),
            ));
        }
        let mut next = Bits::zeros(n);
        for i in 0..n {
            let left = i > 0 && state.get(i - 1);
            let center = self.d.get(i) && state.get(i);
            let right = i + 1 < n && state.get(i + 1);
            next.set(i, left ^ center ^ right);
        }
        Ok(next)
    }
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.d, f)
    }
}

impl FromStr for RuleVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleVector> {
        RuleVector::new(s.parse()?)
    }
}

/// An LHCA with one or more independent blocks (block-diagonal transition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhcaMachine {
    blocks: Vec<RuleVector>,
    state: Bits,
}

impl LhcaMachine {
    pub fn new(blocks: Vec<RuleVector>, state: Bits) -> Result<Self> {
        let total: usize = blocks.iter().map(RuleVector::len).sum();
        if blocks.is_empty() {
            return Err(Error::invalid("machine", "needs at least one block"));
        }
        if state.len() != total {
            return Err(Error::invalid(
                "state",
                format!("length {} does not match {} cells", state.len(), total),
            ));
        }
        Ok(LhcaMachine { blocks, state })
    }

    /// Single-block machine.
    pub fn atomic(rules: RuleVector, state: Bits) -> Result<Self> {
        LhcaMachine::new(vec![rules], state)
    }

    pub fn blocks(&self) -> &[RuleVector] {
        &self.blocks
    }

    pub fn state(&self) -> &Bits {
        &self.state
    }

    pub fn cell_count(&self) -> usize {
        self.state.len()
    }

    /// Same blocks, replaced state.
    pub fn with_state(&self, state: Bits) -> Result<Self> {
        LhcaMachine::new(self.blocks.clone(), state)
    }

    /// Product of the block characteristic polynomials.
    pub fn char_poly(&self) -> Gf2Poly {
        self.blocks
            .iter()
            .map(RuleVector::char_poly)
            .fold(Gf2Poly::one(), |acc, p| acc * p)
    }

    /// One synchronous update; blocks evolve independently.
    pub fn step(&self) -> LhcaMachine {
        let mut next = Bits::zeros(self.state.len());
        let mut offset = 0;
        for block in &self.blocks {
            let slice: Bits = (0..block.len()).map(|i| self.state.get(offset + i)).collect();
            let stepped = block.step(&slice).expect("state partitions by block");
            for i in 0..block.len() {
                next.set(offset + i, stepped.get(i));
            }
            offset += block.len();
        }
        LhcaMachine { blocks: self.blocks.clone(), state: next }
    }

    /// The temporal stream of cell 0, starting with the current state.
    pub fn sequence(&self, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        let mut m = self.clone();
        for t in 0..len {
            out.set(t, m.state.get(0));
            m = m.step();
        }
        out
    }
}

/// Block-diagonal product of the given machines, preserving block order
/// and concatenating their states.
pub fn compose(machines: &[LhcaMachine]) -> Result<LhcaMachine> {
    if machines.is_empty() {
        return Err(Error::invalid("compose", "needs at least one machine"));
    }
    let blocks: Vec<RuleVector> =
        machines.iter().flat_map(|m| m.blocks.iter().cloned()).collect();
    let state: Bits = machines
        .iter()
        .flat_map(|m| (0..m.state.len()).map(|i| m.state.get(i)).collect::<Vec<_>>())
        .collect();
    LhcaMachine::new(blocks, state)
}

/// All residues y of degree < deg(p) satisfying
/// y^2 + (x^2+x) p' y + 1 = 0 (mod p), for irreducible p.
///
/// Substituting y = b z with b = (x^2+x) p' mod p reduces the congruence
/// to z^2 + z = b^{-2} in the field, which the Artin-Schreier solver
/// handles. When b = 0 the congruence collapses to y^2 = 1, whose only
/// root in characteristic 2 is y = 1.
pub fn solve_hca_congruence(p: &Gf2Poly) -> Result<Vec<Gf2Poly>> {
    match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::invalid("congruence modulus", "degree must be at least 1")),
    };
    if !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    let b = (Gf2Poly::from_support(&[2, 1]) * p.derivative()).rem(p)?;
    if b.is_zero() {
        return Ok(vec![Gf2Poly::one()]);
    }
    let b = FieldElement::new(b, p.clone())?;
    let c = b.inverse().expect("nonzero field element").square();
    let mut ys: Vec<Gf2Poly> = solve_artin_schreier(&c)
        .iter()
        .map(|z| Ok(b.mul(z)?.value().clone()))
        .collect::<Result<_>>()?;
    ys.sort();
    ys.dedup();
    Ok(ys)
}

/// Rule vectors realizing the irreducible polynomial `p` as an LHCA
/// characteristic polynomial, lexicographically smallest first.
///
/// There are exactly two realizations, mutual reversals; they coincide
/// for degree 1, where the list has a single entry. Each congruence
/// solution is expanded by the Euclidean algorithm: the quotient chain of
/// (p, y) consists of degree-one quotients whose constant terms, read in
/// reverse, form the rule vector.
pub fn synthesize(p: &Gf2Poly) -> Result<Vec<RuleVector>> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::invalid("synthesis input", "degree must be at least 1")),
    };
    if !p.is_irreducible() {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    if n == 1 {
        let d = Bits::from_int(u64::from(p.constant_term()), 1);
        return Ok(vec![RuleVector::new(d)?]);
    }

    let invariant = |detail: String| Error::SynthesisInvariant { poly: p.to_string(), detail };

    let ys = solve_hca_congruence(p)?;
    if ys.len() != 2 {
        return Err(invariant(format!("expected two congruence solutions, found {}", ys.len())));
    }
    let mut out: Vec<RuleVector> = Vec::new();
    for y in &ys {
        let chain = euclid_quotients(p, y)?;
        if !chain.is_coprime() {
            return Err(invariant(format!("congruence solution shares factor {}", chain.gcd)));
        }
        if chain.quotients.len() != n || !chain.all_quotients_degree_one() {
            return Err(invariant("quotient chain is not n degree-one steps".into()));
        }
        let mut d = Bits::zeros(n);
        for (j, q) in chain.quotients.iter().enumerate() {
            d.set(n - 1 - j, q.constant_term());
        }
        let vector = RuleVector::new(d)?;
        if vector.char_poly() != *p {
            return Err(invariant(format!("realization {vector} fails verification")));
        }
        out.push(vector);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(s: &str) -> RuleVector {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    /// Determinant of x*Id - A for the tridiagonal transition matrix,
    /// by fraction-free elimination over GF(2)[x]. Independent of the
    /// three-term recurrence.
    fn char_poly_by_elimination(v: &RuleVector) -> Gf2Poly {
        let n = v.len();
        let mut m: Vec<Vec<Gf2Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Gf2Poly::x() + Gf2Poly::from_int(u128::from(v.uses_150(i)))
                        } else if i.abs_diff(j) == 1 {
                            Gf2Poly::one()
                        } else {
                            Gf2Poly::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut prev_pivot = Gf2Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match swap {
                    Some(r) => m.swap(k, r),
                    None => return Gf2Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let numerator = m[i][j].clone() * m[k][k].clone()
                        + m[i][k].clone() * m[k][j].clone();
                    let (quot, rem) = numerator.divmod(&prev_pivot).unwrap();
                    assert!(rem.is_zero(), "fraction-free elimination left a remainder");
                    m[i][j] = quot;
                }
            }
            prev_pivot = m[k][k].clone();
        }
        m[n - 1][n - 1].clone()
    }

    #[test]
    fn char_poly_counter_example() {
        let a = vector("001000");
        let b = vector("110111");
        let shared = poly("x^6+x^5+x^4+x^3+1");
        assert_eq!(a.char_poly(), shared);
        assert_eq!(b.char_poly(), shared);
        assert_ne!(a.reversal(), b);
        assert_ne!(a, b);
    }

    #[test]
    fn char_poly_single_cell() {
        assert_eq!(vector("0").char_poly(), poly("x"));
        assert_eq!(vector("1").char_poly(), poly("x+1"));
    }

    #[test]
    fn reversal_mirrors() {
        assert_eq!(vector("001000").reversal(), vector("000100"));
        assert_eq!(vector("101").reversal(), vector("101"));
        let v = vector("0110");
        assert_eq!(v.reversal().reversal(), v);
    }

    #[test]
    fn reversal_preserves_char_poly() {
        for n in 1..=10usize {
            for word in 0..(1u64 << n) {
                let v = RuleVector::new(Bits::from_int(word, n)).unwrap();
                assert_eq!(v.char_poly(), v.reversal().char_poly(), "{v}");
            }
        }
    }

    #[test]
    fn char_poly_matches_elimination_oracle() {
        for n in 1..=6usize {
            for word in 0..(1u64 << n) {
                let v = RuleVector::new(Bits::from_int(word, n)).unwrap();
                assert_eq!(v.char_poly(), char_poly_by_elimination(&v), "{v}");
            }
        }
        for v in ["0010011101", "1111111111", "0110100110"] {
            let v = vector(v);
            assert_eq!(v.char_poly(), char_poly_by_elimination(&v), "{v}");
        }
    }

    #[test]
    fn subpolynomial_examples() {
        let (head, tail) = vector("01").subpolynomials().unwrap();
        assert_eq!(head, poly("x"));
        assert_eq!(tail, poly("x+1"));
        assert!(vector("0").subpolynomials().is_err());
    }

    #[test]
    fn subpolynomial_reversal_symmetry() {
        for n in 2..=8usize {
            for word in 0..(1u64 << n) {
                let v = RuleVector::new(Bits::from_int(word, n)).unwrap();
                let (head, tail) = v.subpolynomials().unwrap();
                let (rev_head, rev_tail) = v.reversal().subpolynomials().unwrap();
                assert_eq!(tail, rev_head, "{v}");
                assert_eq!(head, rev_tail, "{v}");
            }
        }
    }

    #[test]
    fn subpolynomials_satisfy_congruence() {
        // Both subpolynomials solve y^2 + (x^2+x) D' y + 1 = 0 (mod D),
        // reducible characteristic polynomials included.
        for n in 2..=8usize {
            for word in 0..(1u64 << n) {
                let v = RuleVector::new(Bits::from_int(word, n)).unwrap();
                let delta = v.char_poly();
                let b = Gf2Poly::from_support(&[2, 1]) * delta.derivative();
                let (head, tail) = v.subpolynomials().unwrap();
                for y in [head, tail] {
                    let residue = (y.clone() * y.clone() + b.clone() * y + Gf2Poly::one())
                        .rem(&delta)
                        .unwrap();
                    assert!(residue.is_zero(), "{v}");
                }
            }
        }
    }

    #[test]
    fn step_examples() {
        let v = vector("000");
        assert_eq!(v.step(&"000".parse().unwrap()).unwrap().to_string(), "000");
        assert_eq!(v.step(&"100".parse().unwrap()).unwrap().to_string(), "010");
        let one = vector("1");
        assert_eq!(one.step(&"1".parse().unwrap()).unwrap().to_string(), "1");
        assert!(v.step(&"10".parse().unwrap()).is_err());
    }

    #[test]
    fn step_is_linear() {
        let v = vector("0110101");
        for a in [0u64, 1, 37, 64, 99, 127] {
            for b in [0u64, 3, 58, 101, 127] {
                let ba = Bits::from_int(a, 7);
                let bb = Bits::from_int(b, 7);
                let sum = ba.xor(&bb).unwrap();
                let lhs = v.step(&sum).unwrap();
                let rhs = v.step(&ba).unwrap().xor(&v.step(&bb).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn congruence_solutions_quadratic() {
        let p = poly("x^2+x+1");
        let got = solve_hca_congruence(&p).unwrap();
        assert_eq!(got, vec![poly("x"), poly("x+1")]);
    }

    #[test]
    fn congruence_degenerate_degree_one() {
        assert_eq!(solve_hca_congruence(&poly("x+1")).unwrap(), vec![Gf2Poly::one()]);
        assert_eq!(solve_hca_congruence(&poly("x")).unwrap(), vec![Gf2Poly::one()]);
        assert!(matches!(
            solve_hca_congruence(&poly("x^2+1")),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn congruence_matches_brute_force() {
        // Exhaustive residue check over every irreducible of degree 2..=6.
        for n in 2..=6usize {
            for p in crate::gf2::irreducibles_of_degree(n) {
                let b = (Gf2Poly::from_support(&[2, 1]) * p.derivative()).rem(&p).unwrap();
                let mut expected = Vec::new();
                for mask in 0..(1u128 << n) {
                    let y = Gf2Poly::from_int(mask);
                    let lhs = (y.clone() * y.clone() + b.clone() * y.clone() + Gf2Poly::one())
                        .rem(&p)
                        .unwrap();
                    if lhs.is_zero() {
                        expected.push(y);
                    }
                }
                expected.sort();
                assert_eq!(solve_hca_congruence(&p).unwrap(), expected, "modulus {p}");
            }
        }
    }

    #[test]
    fn synthesize_quadratic() {
        let got = synthesize(&poly("x^2+x+1")).unwrap();
        assert_eq!(got, vec![vector("01"), vector("10")]);
    }

    #[test]
    fn synthesize_degree_one() {
        assert_eq!(synthesize(&poly("x+1")).unwrap(), vec![vector("1")]);
        assert_eq!(synthesize(&poly("x")).unwrap(), vec![vector("0")]);
    }

    #[test]
    fn synthesize_rejects_reducible() {
        assert!(matches!(synthesize(&poly("x^2+1")), Err(Error::NotIrreducible(_))));
        assert!(matches!(
            synthesize(&poly("x^6+x^5+x^4+x^3+1")),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn synthesize_degree_four_against_enumeration() {
        let p = poly("x^4+x+1");
        let mut expected = Vec::new();
        for word in 0..16u64 {
            let v = RuleVector::new(Bits::from_int(word, 4)).unwrap();
            if v.char_poly() == p {
                expected.push(v);
            }
        }
        expected.sort();
        assert_eq!(synthesize(&p).unwrap(), expected);
        assert_eq!(expected.len(), 2);
    }

    #[test]
    fn synthesis_round_trip_small_degrees() {
        for n in 1..=8usize {
            for p in crate::gf2::irreducibles_of_degree(n) {
                let realizations = synthesize(&p).unwrap();
                if n == 1 {
                    assert_eq!(realizations.len(), 1);
                } else {
                    assert_eq!(realizations.len(), 2, "{p}");
                    assert_eq!(realizations[0].reversal(), realizations[1], "{p}");
                    assert_ne!(realizations[0], realizations[1], "{p}");
                }
                for v in &realizations {
                    assert_eq!(v.char_poly(), p, "{v}");
                }
            }
        }
    }

    #[test]
    fn compose_identity_and_products() {
        let block = synthesize(&poly("x^2+x+1")).unwrap().remove(0);
        let m = LhcaMachine::atomic(block, Bits::from_int(0b10, 2)).unwrap();
        let same = compose(std::slice::from_ref(&m)).unwrap();
        assert_eq!(same, m);

        let unit = synthesize(&poly("x+1")).unwrap().remove(0);
        let u = LhcaMachine::atomic(unit, Bits::from_int(1, 1)).unwrap();
        let product = compose(&[m, u]).unwrap();
        assert_eq!(product.char_poly(), poly("x^3+1"));
        assert_eq!(product.cell_count(), 3);
    }

    #[test]
    fn compose_blocks_step_independently() {
        let a = synthesize(&poly("x^3+x+1")).unwrap().remove(0);
        let b = synthesize(&poly("x^2+x+1")).unwrap().remove(0);
        let ma = LhcaMachine::atomic(a, Bits::from_int(0b101, 3)).unwrap();
        let mb = LhcaMachine::atomic(b, Bits::from_int(0b01, 2)).unwrap();
        let joint = compose(&[ma.clone(), mb.clone()]).unwrap();

        let joint_after = joint.step().step();
        let ma_after = ma.step().step();
        let mb_after = mb.step().step();
        let expected: Bits = (0..3)
            .map(|i| ma_after.state().get(i))
            .chain((0..2).map(|i| mb_after.state().get(i)))
            .collect();
        assert_eq!(joint_after.state(), &expected);
    }

    #[test]
    fn composed_period_is_lcm_of_block_periods() {
        // Primitive degree-3 and degree-4 blocks: periods 7 and 15,
        // so a state nonzero in both blocks returns after lcm = 105 steps.
        let a = synthesize(&poly("x^3+x+1")).unwrap().remove(0);
        let b = synthesize(&poly("x^4+x+1")).unwrap().remove(0);
        let ma = LhcaMachine::atomic(a, Bits::from_int(0b001, 3)).unwrap();
        let mb = LhcaMachine::atomic(b, Bits::from_int(0b0001, 4)).unwrap();
        let joint = compose(&[ma, mb]).unwrap();
        let start = joint.state().clone();
        let mut m = joint.step();
        let mut period = 1u64;
        while m.state() != &start {
            m = m.step();
            period += 1;
            assert!(period <= 105);
        }
        assert_eq!(period, 105);
    }

    #[test]
    fn zero_state_is_fixed() {
        let v = vector("0110");
        let m = LhcaMachine::atomic(v, Bits::zeros(4)).unwrap();
        assert_eq!(m.step().state(), &Bits::zeros(4));
        assert_eq!(m.sequence(5).to_string(), "00000");
    }

    #[test]
    fn rule_vector_round_trips_text() {
        let v = vector("001000");
        assert_eq!(v.to_string(), "001000");
        assert!("".parse::<RuleVector>().is_err());
        assert!("01a".parse::<RuleVector>().is_err());
    }
}
