//! Trace-monomial boolean functions f(x) = Tr(ax + bx^s) over extension
//! fields: the classical exponent families, truth tables and power-basis
//! sequences, parity-check polynomials, and LHCA realizations.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::eval::BooleanFunction;
use crate::gf2::{FieldElement, Gf2Poly};
use crate::lhca::{compose, synthesize, LhcaMachine};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The classical almost-bent exponent families over F_{2^n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentFamily {
    /// s = 2^i + 1 with gcd(i, n) = 1 and 1 <= i <= n/2.
    Gold { n: usize, i: usize },
    /// s = 2^(2i) - 2^i + 1 with gcd(i, n) = 1 and 1 <= i <= n/2.
    Kasami { n: usize, i: usize },
    /// s = 2^((n-1)/2) + 3, n odd.
    Welch { n: usize },
    /// s = 2^(2r) + 2^r - 1 with t = (n-1)/2 and r = t/2 for even t,
    /// r = (3t+1)/2 for odd t; n odd and 1 <= r <= n.
    Niho { n: usize },
}

impl ExponentFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ExponentFamily::Gold { .. } => "gold",
            ExponentFamily::Kasami { .. } => "kasami",
            ExponentFamily::Welch { .. } => "welch",
            ExponentFamily::Niho { .. } => "niho",
        }
    }

    pub fn field_degree(&self) -> usize {
        match *self {
            ExponentFamily::Gold { n, .. }
            | ExponentFamily::Kasami { n, .. }
            | ExponentFamily::Welch { n }
            | ExponentFamily::Niho { n } => n,
        }
    }

    fn check_gold_kasami(family: &'static str, n: usize, i: usize) -> Result<()> {
        if i < 1 || 2 * i > n {
            return Err(Error::FamilyCondition {
                family,
                detail: format!("parameter i = {i} outside 1 <= i <= {n}/2"),
            });
        }
        if gcd(i as u64, n as u64) != 1 {
            return Err(Error::FamilyCondition {
                family,
                detail: format!("gcd(i, n) = gcd({i}, {n}) must be 1"),
            });
        }
        Ok(())
    }

    fn require_odd(family: &'static str, n: usize) -> Result<()> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::FamilyCondition {
                family,
                detail: format!("field degree {n} must be odd and at least 3"),
            });
        }
        Ok(())
    }

    /// The exponent s, after validating the family's side conditions.
    pub fn exponent(&self) -> Result<u64> {
        match *self {
            ExponentFamily::Gold { n, i } => {
                Self::check_gold_kasami("gold", n, i)?;
                Ok((1 << i) + 1)
            }
            ExponentFamily::Kasami { n, i } => {
                Self::check_gold_kasami("kasami", n, i)?;
                Ok((1 << (2 * i)) - (1 << i) + 1)
            }
            ExponentFamily::Welch { n } => {
                Self::require_odd("welch", n)?;
                Ok((1 << ((n - 1) / 2)) + 3)
            }
            ExponentFamily::Niho { n } => {
                Self::require_odd("niho", n)?;
                let t = (n - 1) / 2;
                let r = if t % 2 == 0 { t / 2 } else { (3 * t + 1) / 2 };
                if r < 1 || r > n {
                    return Err(Error::FamilyCondition {
                        family: "niho",
                        detail: format!("derived r = {r} outside 1 <= r <= {n}"),
                    });
                }
                Ok((1 << (2 * r)) + (1 << r) - 1)
            }
        }
    }
}

/// f(x) = Tr(ax + bx^s) over the field of a and b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMonomial {
    a: FieldElement,
    b: FieldElement,
    s: u64,
}

impl TraceMonomial {
    pub fn new(a: FieldElement, b: FieldElement, s: u64) -> Result<Self> {
        if a.modulus() != b.modulus() {
            return Err(Error::ModulusMismatch {
                left: a.modulus().to_string(),
                right: b.modulus().to_string(),
            });
        }
        Ok(TraceMonomial { a, b, s })
    }

    pub fn coefficients(&self) -> (&FieldElement, &FieldElement) {
        (&self.a, &self.b)
    }

    pub fn exponent(&self) -> u64 {
        self.s
    }

    pub fn field_degree(&self) -> usize {
        self.a.field_degree()
    }

    pub fn evaluate(&self, x: &FieldElement) -> Result<bool> {
        let linear = self.a.mul(x)?;
        let power = self.b.mul(&x.pow(u128::from(self.s)))?;
        Ok(linear.add(&power)?.trace())
    }

    /// The full truth table read through the polynomial-basis dictionary:
    /// entry i evaluates f on the field element whose coordinate vector
    /// is the base-2 expansion of i (bit j = coefficient of x^j).
    pub fn truth_table(&self) -> Result<BooleanFunction> {
        let n = self.field_degree();
        let mut table = Bits::zeros(1 << n);
        for i in 0..1u128 << n {
            let x = self.a.in_same_field(Gf2Poly::from_int(i));
            table.set(i as usize, self.evaluate(&x)?);
        }
        BooleanFunction::new(n, table)
    }

    /// The stream u_t = Tr(a g^t + b g^(st)) for the generator g = x of a
    /// primitive modulus; the m-sequence-domain form of the function.
    pub fn power_sequence(&self, len: usize) -> Result<Bits> {
        let modulus = self.a.modulus();
        if !modulus.is_primitive()? {
            return Err(Error::NotPrimitive(modulus.to_string()));
        }
        let g = FieldElement::generator(modulus.clone())?;
        let g_s = g.pow(u128::from(self.s));
        let mut linear = self.a.clone();
        let mut power = self.b.clone();
        let mut out = Bits::zeros(len);
        for t in 0..len {
            out.set(t, linear.add(&power)?.trace());
            linear = linear.mul(&g)?;
            power = power.mul(&g_s)?;
        }
        Ok(out)
    }
}

/// True when s lands in the cyclotomic coset of 1 modulo 2^n - 1, i.e.
/// alpha^s is a Frobenius conjugate of alpha.
fn conjugate_to_one(s: u64, n: usize) -> bool {
    let order = (1u64 << n) - 1;
    let reduced = s % order;
    (0..n).any(|j| reduced == (1u64 << j) % order)
}

/// The parity-check polynomial m_alpha * m_(alpha^s) for alpha = x modulo
/// a primitive polynomial.
///
/// Errors when alpha^s is conjugate to alpha, where the two minimal
/// polynomials coincide and the product would degenerate to a square.
pub fn parity_check_poly(s: u64, modulus: &Gf2Poly) -> Result<Gf2Poly> {
    if !modulus.is_primitive()? {
        return Err(Error::NotPrimitive(modulus.to_string()));
    }
    let n = modulus.degree().expect("primitive polynomials are nonzero");
    if conjugate_to_one(s, n) {
        return Err(Error::ConjugateCollision { s, n });
    }
    let alpha = FieldElement::generator(modulus.clone())?;
    let m_alpha = alpha.minimal_polynomial();
    let m_power = alpha.pow(u128::from(s)).minimal_polynomial();
    Ok(m_alpha * m_power)
}

/// A composed LHCA whose characteristic polynomial is the parity-check
/// polynomial of (s, modulus): one synthesized block per factor, each
/// seeded with an impulse so every block runs at full period.
pub fn realize_as_lhca(s: u64, modulus: &Gf2Poly) -> Result<LhcaMachine> {
    if !modulus.is_primitive()? {
        return Err(Error::NotPrimitive(modulus.to_string()));
    }
    let n = modulus.degree().expect("primitive polynomials are nonzero");
    if conjugate_to_one(s, n) {
        return Err(Error::ConjugateCollision { s, n });
    }
    let alpha = FieldElement::generator(modulus.clone())?;
    let factors = [alpha.minimal_polynomial(), alpha.pow(u128::from(s)).minimal_polynomial()];
    let blocks: Vec<LhcaMachine> = factors
        .iter()
        .map(|factor| {
            let rules = synthesize(factor)?.remove(0);
            let cells = rules.len();
            LhcaMachine::atomic(rules, Bits::impulse(cells, 0)?)
        })
        .collect::<Result<_>>()?;
    compose(&blocks)
}
