//! Elementary (radius-1, binary) cellular automata: rule numbering,
//! simulation on cyclic and null-boundary arrays, rule equivalences and
//! single-cell stream extraction.

use std::fmt;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// One of the 256 elementary CA rules.
///
/// Bit `k` of the number is the output for the neighborhood whose 3-bit
/// value is `k`, reading the triple `left center right` as a number with
/// `left` the high bit. The conventional written table lists the outputs
/// for neighborhoods 111 down to 000, so rule 30 displays as `00011110`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Rule(u8);

impl Rule {
    pub fn new(number: u8) -> Self {
        Rule(number)
    }

    pub fn number(&self) -> u8 {
        self.0
    }

    /// Output for one neighborhood.
    pub fn apply(&self, left: bool, center: bool, right: bool) -> bool {
        let k = (u8::from(left) << 2) | (u8::from(center) << 1) | u8::from(right);
        self.0 >> k & 1 == 1
    }

    /// The 8 outputs indexed by neighborhood value.
    pub fn table(&self) -> [bool; 8] {
        std::array::from_fn(|k| self.0 >> k & 1 == 1)
    }

    /// Table word in display order, neighborhoods 111 down to 000.
    pub fn table_word(&self) -> String {
        (0..8)
            .rev()
            .map(|k| if self.0 >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Conjugation: interchange the roles of 0 and 1.
    ///
    /// The table word becomes its complemented mirror image.
    pub fn conjugate(&self) -> Rule {
        Rule(!self.0.reverse_bits())
    }

    /// Reflection: swap the left and right neighbors.
    pub fn reflect(&self) -> Rule {
        let mut out = 0u8;
        for k in 0..8u8 {
            let mirrored = (k & 0b010) | (k & 0b100) >> 2 | (k & 0b001) << 2;
            if self.0 >> mirrored & 1 == 1 {
                out |= 1 << k;
            }
        }
        Rule(out)
    }

    /// Conjugation composed with reflection (order-independent).
    pub fn conjugate_reflect(&self) -> Rule {
        self.conjugate().reflect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How cells beyond the ends of the array behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// The array closes into a ring.
    Cyclic,
    /// Both out-of-range neighbors read as 0.
    Null,
}

/// A finite one-dimensional CA configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    cells: Bits,
    boundary: Boundary,
}

impl Configuration {
    pub fn new(cells: Bits, boundary: Boundary) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::invalid("configuration", "must have at least one cell"));
        }
        Ok(Configuration { cells, boundary })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn cells(&self) -> &Bits {
        &self.cells
    }

    pub fn into_cells(self) -> Bits {
        self.cells
    }

    fn neighbor(&self, i: usize, offset: isize) -> bool {
        let n = self.len() as isize;
        let j = i as isize + offset;
        match self.boundary {
            Boundary::Cyclic => self.cells.get(j.rem_euclid(n) as usize),
            Boundary::Null => {
                if (0..n).contains(&j) {
                    self.cells.get(j as usize)
                } else {
                    false
                }
            }
        }
    }

    /// One synchronous update of every cell.
    pub fn step(&self, rule: Rule) -> Configuration {
        let cells = (0..self.len())
            .map(|i| rule.apply(self.neighbor(i, -1), self.neighbor(i, 0), self.neighbor(i, 1)))
            .collect();
        Configuration { cells, boundary: self.boundary }
    }

    /// The configurations after 1..=steps updates, preceded by the start.
    pub fn evolve(&self, rule: Rule, steps: usize) -> Vec<Configuration> {
        let mut rows = Vec::with_capacity(steps + 1);
        rows.push(self.clone());
        for _ in 0..steps {
            let next = rows.last().unwrap().step(rule);
            rows.push(next);
        }
        rows
    }

    /// The temporal sequence of one cell over `steps` updates, starting
    /// with its value in the initial configuration.
    pub fn cell_sequence(&self, rule: Rule, cell: usize, steps: usize) -> Result<Bits> {
        if cell >= self.len() {
            return Err(Error::CellIndex { index: cell, len: self.len() });
        }
        let mut out = Bits::zeros(steps + 1);
        let mut current = self.clone();
        for t in 0..=steps {
            out.set(t, current.cells.get(cell));
            if t < steps {
                current = current.step(rule);
            }
        }
        Ok(out)
    }
}

/// Rows of a space-time diagram rendered as lines of `0` and `1`.
pub fn diagram_text(rows: &[Configuration]) -> String {
    let mut out = String::new();
    for row in rows {
        for i in 0..row.len() {
            out.push(if row.cells().get(i) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Rows of a space-time diagram as a portable bitmap (PBM, P1 text form),
/// one image row per time step, 1 = live cell.
pub fn diagram_pbm(rows: &[Configuration]) -> Result<String> {
    let width = match rows.first() {
        Some(r) => r.len(),
        None => return Err(Error::invalid("diagram", "needs at least one row")),
    };
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::invalid("diagram", "rows differ in width"));
    }
    let mut out = format!("P1\n{} {}\n", width, rows.len());
    for row in rows {
        let line: Vec<&str> = (0..width)
            .map(|i| if row.cells().get(i) { "1" } else { "0" })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}
