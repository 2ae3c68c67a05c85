//! Berlekamp-Massey over GF(2): shortest linear recurrence of a bit stream.

use crate::bits::Bits;
use crate::gf2::poly::Gf2Poly;

/// Connection polynomial of the shortest linear recurrence generating `s`.
///
/// The result is returned in characteristic-polynomial form: for a
/// recurrence s[t] = sum c_i s[t-i] of length L, the polynomial is
/// x^L + c_1 x^(L-1) + ... + c_L, so its degree equals the linear
/// complexity. The all-zero stream has complexity 0 and maps to the
/// constant 1. A Fibonacci LFSR built from the returned polynomial and
/// seeded with the first L stream bits regenerates the stream.
pub fn berlekamp_massey(s: &Bits) -> Gf2Poly {
    // Feedback polynomials c(x), b(x) with c[0] = b[0] = 1, as bit masks
    // over shift offsets. Streams at desk scale keep the masks small.
    let mut c = vec![true];
    let mut b = vec![true];
    let mut l = 0usize;
    let mut m = 1usize;
    for n in 0..s.len() {
        let mut d = s.get(n);
        for i in 1..=l {
            d ^= c.get(i).copied().unwrap_or(false) && s.get(n - i);
        }
        if !d {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            xor_shifted(&mut c, &b, m);
            l = n + 1 - l;
            b = t;
            m = 1;
        } else {
            xor_shifted(&mut c, &b, m);
            m += 1;
        }
    }
    // Reciprocal of c padded to degree L: bit j of the characteristic
    // polynomial is c[L - j].
    let mut out = Gf2Poly::zero();
    for (i, &set) in c.iter().enumerate().take(l + 1) {
        if set {
            out = out + Gf2Poly::monomial(l - i);
        }
    }
    out
}

fn xor_shifted(c: &mut Vec<bool>, b: &[bool], offset: usize) {
    if c.len() < b.len() + offset {
        c.resize(b.len() + offset, false);
    }
    for (i, &bit) in b.iter().enumerate() {
        c[i + offset] ^= bit;
    }
}

/// Linear complexity of a bit stream.
pub fn linear_complexity(s: &Bits) -> usize {
    berlekamp_massey(s).degree().unwrap_or(0)
}
