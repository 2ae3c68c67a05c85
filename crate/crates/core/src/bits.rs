//! Finite bit sequences: CA configurations, generator streams, truth tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of bits.
///
/// Used for CA configurations, generator output streams and boolean-function
/// truth tables. Indexing is 0-based and position `i` is bit `i` of any
/// integer encoding (LSB-first, matching the polynomial coefficient order).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bits {
    bits: Vec<bool>,
}

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits { bits }
    }

    /// All-zero sequence of the given length.
    pub fn zeros(len: usize) -> Self {
        Bits {
            bits: vec![false; len],
        }
    }

    /// Sequence of `len` bits with a single 1 at `index`.
    pub fn impulse(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::CellIndex { index, len });
        }
        let mut bits = vec![false; len];
        bits[index] = true;
        Ok(Bits { bits })
    }

    /// Low `len` bits of `value`, bit `i` of the integer at position `i`.
    pub fn from_int(value: u64, len: usize) -> Self {
        Bits {
            bits: (0..len).map(|i| i < 64 && (value >> i) & 1 == 1).collect(),
        }
    }

    /// Parse a hex mask into `len` bits, bit `i` of the integer at position `i`.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if digits.is_empty() {
            return Err(Error::invalid("hex bit string", "empty"));
        }
        let mut bits = vec![false; len];
        // Last hex digit holds bits 0..4.
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::invalid("hex bit string", format!("bad digit {ch:?}")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let i = pos * 4 + b;
                    if i >= len {
                        return Err(Error::invalid(
                            "hex bit string",
                            format!("value does not fit in {len} bits"),
                        ));
                    }
                    bits[i] = true;
                }
            }
        }
        Ok(Bits { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn push(&mut self, v: bool) {
        self.bits.push(v);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Number of 1 bits.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// Bitwise complement of the sequence.
    pub fn complement(&self) -> Self {
        Bits {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// Mirror image of the sequence.
    pub fn mirrored(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Bits { bits }
    }

    /// Position-wise exclusive or; lengths must match.
    pub fn xor(&self, rhs: &Bits) -> Result<Self> {
        if self.len() != rhs.len() {
            return Err(Error::invalid(
                "bit sequence",
                format!("xor of lengths {} and {}", self.len(), rhs.len()),
            ));
        }
        Ok(Bits {
            bits: self
                .bits
                .iter()
                .zip(&rhs.bits)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        })
    }

    /// Pack positions `0..min(len, 64)` into an integer, position `i` at bit `i`.
    pub fn to_int(&self) -> u64 {
        self.bits
            .iter()
            .take(64)
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromStr for Bits {
    type Err = Error;

    /// Parses a 0/1 string; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::invalid(
                        "bit string",
                        format!("unexpected character {c:?}"),
                    ))
                }
            }
        }
        Ok(Bits { bits })
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Bits {
            bits: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let b: Bits = "001000".parse().unwrap();
        assert_eq!(b.len(), 6);
        assert!(b.get(2));
        assert_eq!(b.to_string(), "001000");
    }

    #[test]
    fn hex_is_lsb_first() {
        let b = Bits::from_hex("0x79", 7).unwrap();
        assert_eq!(b.to_string(), "1001111");
        assert_eq!(b.to_int(), 0x79);
        assert!(Bits::from_hex("0x79", 4).is_err());
    }

    #[test]
    fn int_round_trip_and_mirror() {
        let b = Bits::from_int(0b1011, 6);
        assert_eq!(b.to_string(), "110100");
        assert_eq!(b.mirrored().to_string(), "001011");
        assert_eq!(b.to_int(), 0b1011);
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x".parse::<Bits>().is_err());
        assert!(Bits::from_hex("0xzz", 8).is_err());
    }
}
