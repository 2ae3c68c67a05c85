//! Empirical window entropy of a bit sequence.

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Shannon entropy, in bits, of the empirical distribution of the
/// overlapping length-`h` windows of `s` (no wraparound).
///
/// Ranges over [0, h]; the maximum h is attained exactly when all 2^h
/// window values occur equally often.
pub fn koza_entropy(s: &Bits, h: usize) -> Result<f64> {
    if h == 0 || h >= usize::BITS as usize {
        return Err(Error::invalid("window length", "must be between 1 and 63"));
    }
    if s.len() < h {
        return Err(Error::InsufficientLength { needed: h, got: s.len() });
    }
    let windows = s.len() - h + 1;
    let mut counts = vec![0u64; 1 << h];
    let mask = (1usize << h) - 1;
    let mut value = 0usize;
    for i in 0..s.len() {
        value = ((value << 1) | usize::from(s.get(i))) & mask;
        if i + 1 >= h {
            counts[value] += 1;
        }
    }
    let total = windows as f64;
    let entropy = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    Ok(entropy)
}
