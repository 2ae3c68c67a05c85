//! Polynomials over the two-element field, one bit per coefficient.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest degree accepted by the primitivity test.
///
/// 2^n - 1 is factored by trial division, which stays cheap up to 64-bit
/// orders; larger degrees are rejected loudly rather than silently slow.
pub const PRIMITIVITY_DEGREE_BOUND: usize = 32;

/// A polynomial over GF(2).
///
/// Bit `i` of the limb vector is the coefficient of `x^i`. The zero
/// polynomial is the empty limb vector and has no degree; `degree()`
/// returns `None` for it, which orders below every finite degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { limbs: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Gf2Poly { limbs: vec![2] }
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0u64; k / 64 + 1];
        limbs[k / 64] = 1 << (k % 64);
        Gf2Poly { limbs }
    }

    /// Polynomial with the given exponents set (duplicates cancel).
    pub fn from_support(exponents: &[usize]) -> Self {
        let mut p = Gf2Poly::zero();
        for &e in exponents {
            p = p + Gf2Poly::monomial(e);
        }
        p
    }

    /// Coefficient mask from an integer, bit `i` = coefficient of `x^i`.
    pub fn from_int(mask: u128) -> Self {
        let mut p = Gf2Poly {
            limbs: vec![mask as u64, (mask >> 64) as u64],
        };
        p.normalize();
        p
    }

    /// Coefficient sequence, position `i` = coefficient of `x^i`.
    pub fn from_coefficients(bits: &Bits) -> Self {
        let mut p = Gf2Poly {
            limbs: vec![0; bits.len() / 64 + 1],
        };
        for (i, b) in bits.iter().enumerate() {
            if b {
                p.limbs[i / 64] |= 1 << (i % 64);
            }
        }
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// Coefficient mask as an integer; inverse of [`from_int`](Self::from_int)
    /// for degrees below 128.
    pub fn to_int(&self) -> Result<u128> {
        if self.limbs.len() > 2 {
            return Err(Error::DegreeBound {
                degree: self.degree().unwrap_or(0),
                bound: 127,
            });
        }
        let low = self.limbs.first().copied().unwrap_or(0) as u128;
        let high = self.limbs.get(1).copied().unwrap_or(0) as u128;
        Ok(high << 64 | low)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    ///
    /// `Option<usize>` gives the required ordering for free:
    /// `None < Some(0) < Some(1) < ...`.
    pub fn degree(&self) -> Option<usize> {
        let last = self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .map_or(false, |limb| limb >> (i % 64) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Exponents with nonzero coefficient, descending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some(deg) = self.degree() {
            for i in (0..=deg).rev() {
                if self.coeff(i) {
                    out.push(i);
                }
            }
        }
        out
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let (words, rem) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + words] ^= l << rem;
            if rem > 0 {
                limbs[i + words + 1] ^= l >> (64 - rem);
            }
        }
        let mut p = Gf2Poly { limbs };
        p.normalize();
        p
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Gf2Poly) -> Result<(Gf2Poly, Gf2Poly)> {
        let dq = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dq {
                break;
            }
            quot = quot + Gf2Poly::monomial(dr - dq);
            rem = rem + divisor.shift(dr - dq);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        Ok(self.divmod(modulus)?.1)
    }

    /// Greatest common divisor (monic by construction over GF(2)).
    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Formal derivative in characteristic two: only odd exponents survive.
    pub fn derivative(&self) -> Self {
        let mut p = Gf2Poly::zero();
        for e in self.support() {
            if e % 2 == 1 {
                p = p + Gf2Poly::monomial(e - 1);
            }
        }
        p
    }

    /// `self * rhs mod modulus`.
    pub fn mul_mod(&self, rhs: &Gf2Poly, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        (self.clone() * rhs.clone()).rem(modulus)
    }

    /// `self^e mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Gf2Poly) -> Result<Gf2Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Gf2Poly::one().rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            base = base.mul_mod(&base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over GF(2).
    ///
    /// A polynomial of degree n is reducible iff it has an irreducible
    /// factor of degree k <= n/2, and gcd(x^(2^k) - x, p) collects exactly
    /// the factors of degree dividing k. Constants and zero are not
    /// irreducible.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        // Iterate x^(2^k) mod p by squaring; compare against x via gcd.
        let x = Gf2Poly::x();
        let mut xq = x.clone();
        for _ in 1..=n / 2 {
            xq = xq.mul_mod(&xq, self).expect("nonzero modulus");
            let g = (xq.clone() + x.clone()).gcd(self);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Primitivity: `x mod self` has multiplicative order 2^n - 1.
    ///
    /// Errors on reducible input or degree above
    /// [`PRIMITIVITY_DEGREE_BOUND`].
    pub fn is_primitive(&self) -> Result<bool> {
        let n = self.degree().unwrap_or(0);
        if n > PRIMITIVITY_DEGREE_BOUND {
            return Err(Error::DegreeBound {
                degree: n,
                bound: PRIMITIVITY_DEGREE_BOUND,
            });
        }
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible(self.to_string()));
        }
        if !self.constant_term() {
            // p = x: the residue of x is 0, not a generator.
            return Ok(false);
        }
        let order = (1u64 << n) - 1;
        for prime in factor_distinct(order) {
            let probe = Gf2Poly::x().pow_mod((order / prime) as u128, self)?;
            if probe.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hex coefficient mask, LSB = constant term.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = String::from("0x");
        let mut first = true;
        for &limb in self.limbs.iter().rev() {
            if first {
                s.push_str(&format!("{limb:x}"));
                first = false;
            } else {
                s.push_str(&format!("{limb:016x}"));
            }
        }
        s
    }

    fn parse_symbolic(s: &str) -> Result<Gf2Poly> {
        let mut seen = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let exponent = match term {
                "0" => continue,
                "1" => 0,
                "x" => 1,
                _ => {
                    let rest = term.strip_prefix("x^").ok_or_else(|| {
                        Error::invalid("polynomial", format!("unrecognized term {term:?}"))
                    })?;
                    rest.parse::<usize>().map_err(|_| {
                        Error::invalid("polynomial", format!("bad exponent in {term:?}"))
                    })?
                }
            };
            if seen.contains(&exponent) {
                return Err(Error::invalid(
                    "polynomial",
                    format!("duplicate term x^{exponent}"),
                ));
            }
            seen.push(exponent);
        }
        Ok(Gf2Poly::from_support(&seen))
    }

    fn parse_hex(s: &str) -> Result<Gf2Poly> {
        let digits = &s[2..];
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::invalid("polynomial", format!("bad hex mask {s:?}")));
        }
        let mut limbs = vec![0u64; digits.len() / 16 + 1];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).unwrap() as u64;
            limbs[pos / 16] |= nibble << (4 * (pos % 16));
        }
        let mut p = Gf2Poly { limbs };
        p.normalize();
        Ok(p)
    }
}

impl Ord for Gf2Poly {
    /// Orders polynomials as the integers their coefficient masks encode:
    /// by degree, then by the highest differing coefficient.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != std::cmp::Ordering::Equal {
            return by_degree;
        }
        self.limbs.iter().rev().cmp(other.limbs.iter().rev())
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;

    fn add(self, rhs: Gf2Poly) -> Gf2Poly {
        let (mut long, short) = if self.limbs.len() >= rhs.limbs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (i, limb) in short.limbs.iter().enumerate() {
            long.limbs[i] ^= limb;
        }
        long.normalize();
        long
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;

    // Carry-less: the products of self by each term of rhs are xored in.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        let mut acc = Gf2Poly::zero();
        for e in rhs.support() {
            acc = acc + self.shift(e);
        }
        acc
    }
}

impl fmt::Display for Gf2Poly {
    /// Symbolic form, descending exponents: `x^6+x^5+x^4+x^3+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|e| match e {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    /// Accepts the symbolic form (`x^4+x+1`, terms in any order) and the
    /// hex coefficient mask (`0x13` for that same polynomial).
    fn from_str(s: &str) -> Result<Gf2Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("polynomial", "empty string"));
        }
        if s.starts_with("0x") || s.starts_with("0X") {
            Gf2Poly::parse_hex(s)
        } else {
            Gf2Poly::parse_symbolic(s)
        }
    }
}

/// Quotient sequence of the Euclidean algorithm on `(p, q)`.
///
/// Division continues until the remainder vanishes; `gcd` is the last
/// nonzero remainder (i.e. the final divisor). The chain is coprime when
/// `gcd` is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidChain {
    pub quotients: Vec<Gf2Poly>,
    pub gcd: Gf2Poly,
}

impl EuclidChain {
    pub fn is_coprime(&self) -> bool {
        self.gcd.is_one()
    }

    pub fn all_quotients_degree_one(&self) -> bool {
        self.quotients.iter().all(|q| q.degree() == Some(1))
    }
}

/// Runs the Euclidean algorithm on `(p, q)` and records every quotient.
///
/// Errors only when `q` is zero. A non-constant `gcd` is reported in-band
/// through the returned chain.
pub fn euclid_quotients(p: &Gf2Poly, q: &Gf2Poly) -> Result<EuclidChain> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let (quot, rem) = a.divmod(&b)?;
        quotients.push(quot);
        a = b;
        b = rem;
    }
    Ok(EuclidChain { quotients, gcd: a })
}

/// Distinct prime factors of `n` by trial division over a sieved prime list.
fn factor_distinct(mut n: u64) -> Vec<u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let primes = PRIMES.get_or_init(|| {
        // Primes below 2^16 cover trial division for any 32-bit order.
        let limit = 1usize << 16;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
            .collect()
    });
    let mut out = Vec::new();
    for &p in primes {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_is_self_inverse() {
        let p = poly("x+1");
        assert!(p.clone().add(p).is_zero());
        assert_eq!(poly("x^2") + poly("x+1"), poly("x^2+x+1"));
        // coefficient-wise xor by hand
        assert_eq!(poly("x^3+x") + poly("x^3+1"), poly("x+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly("x+1") * poly("x+1"), poly("x^2+1"));
        assert_eq!(poly("x^5+x^2+1") * Gf2Poly::one(), poly("x^5+x^2+1"));
        assert_eq!(poly("x^2+x+1") * poly("x+1"), poly("x^3+1"));
    }

    #[test]
    fn degree_law_for_nonzero_products() {
        let p = poly("x^7+x^3+1");
        let q = poly("x^5+x^4+x");
        assert_eq!(
            (p.clone() * q.clone()).degree(),
            Some(p.degree().unwrap() + q.degree().unwrap())
        );
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = poly("x^2+x+1").divmod(&Gf2Poly::x()).unwrap();
        assert_eq!((q, r), (poly("x+1"), Gf2Poly::one()));

        let p = poly("x^6+x^5+x^4+x^3+1");
        let (q, r) = p.divmod(&p).unwrap();
        assert_eq!((q, r), (Gf2Poly::one(), Gf2Poly::zero()));

        let (q, r) = Gf2Poly::one().divmod(&poly("x+1")).unwrap();
        assert_eq!((q, r), (Gf2Poly::zero(), Gf2Poly::one()));

        assert_eq!(
            p.divmod(&Gf2Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn euclid_quotient_chains() {
        let chain = euclid_quotients(&poly("x^2+x+1"), &Gf2Poly::x()).unwrap();
        assert_eq!(chain.quotients, vec![poly("x+1"), poly("x")]);
        assert!(chain.is_coprime());
        assert!(chain.all_quotients_degree_one());

        let chain = euclid_quotients(&poly("x+1"), &Gf2Poly::one()).unwrap();
        assert_eq!(chain.quotients, vec![poly("x+1")]);
        assert!(chain.is_coprime());

        // Non-coprime chain: the gcd flag carries the failure.
        let chain = euclid_quotients(&poly("x^2"), &Gf2Poly::x()).unwrap();
        assert_eq!(chain.gcd, poly("x"));
        assert!(!chain.is_coprime());
    }

    #[test]
    fn derivative_keeps_odd_exponents() {
        assert_eq!(poly("x^2+x+1").derivative(), Gf2Poly::one());
        assert_eq!(poly("x^2").derivative(), Gf2Poly::zero());
        assert_eq!(
            poly("x^6+x^5+x^4+x^3+1").derivative(),
            poly("x^4+x^2")
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly("x^2+x+1").is_irreducible());
        assert!(!poly("x^2+1").is_irreducible());
        assert!(!poly("x^6+x^5+x^4+x^3+1").is_irreducible());
        assert!(poly("x").is_irreducible());
        assert!(!Gf2Poly::one().is_irreducible());
        assert!(!Gf2Poly::zero().is_irreducible());
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(poly("x^4+x+1").is_primitive(), Ok(true));
        assert_eq!(poly("x^4+x^3+x^2+x+1").is_primitive(), Ok(false));
        assert_eq!(poly("x+1").is_primitive(), Ok(true));
        assert_eq!(poly("x").is_primitive(), Ok(false));
        assert!(matches!(
            poly("x^2+1").is_primitive(),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(
            Gf2Poly::monomial(33).is_primitive(),
            Err(Error::DegreeBound { .. })
        ));
    }

    #[test]
    fn text_formats() {
        let p = poly("x^6+x^5+x^4+x^3+1");
        assert_eq!(p.to_string(), "x^6+x^5+x^4+x^3+1");
        assert_eq!(p.to_hex(), "0x79");
        assert_eq!(poly("0x79"), p);
        assert_eq!(poly("1 + x^3 + x^4 + x^6 + x^5"), p);
        assert_eq!(Gf2Poly::zero().to_string(), "0");
        assert_eq!(poly("0"), Gf2Poly::zero());
        assert!("x^2+x^2".parse::<Gf2Poly>().is_err());
        assert!("y+1".parse::<Gf2Poly>().is_err());
    }

    #[test]
    fn factoring_orders() {
        assert_eq!(factor_distinct(15), vec![3, 5]);
        assert_eq!(factor_distinct((1 << 12) - 1), vec![3, 5, 7, 13]);
        assert_eq!(factor_distinct(u32::MAX as u64), vec![3, 5, 17, 257, 65537]);
    }
}
