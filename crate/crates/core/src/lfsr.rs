//! Linear feedback shift registers in Fibonacci and Galois form, plus
//! exhaustive cycle-structure enumeration for any finite linear machine.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::gf2::Gf2Poly;
use crate::lhca::LhcaMachine;

/// Register arrangement. Both forms realize the same connection
/// polynomial and have identical cycle structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LfsrForm {
    /// Taps feed one new bit into the far end; output is bit 0.
    Fibonacci,
    /// State multiplies by x modulo the connection polynomial each step;
    /// output is the overflow bit.
    Galois,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrMachine {
    connection: Gf2Poly,
    state: Bits,
    form: LfsrForm,
}

impl LfsrMachine {
    pub fn new(connection: Gf2Poly, state: Bits, form: LfsrForm) -> Result<Self> {
        let n = match connection.degree() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::invalid(
                    "connection polynomial",
                    "degree must be at least 1",
                ))
            }
        };
        if state.len() != n {
            return Err(Error::invalid(
                "seed",
                format!("length {} does not match degree {}", state.len(), n),
            ));
        }
        Ok(LfsrMachine { connection, state, form })
    }

    pub fn connection(&self) -> &Gf2Poly {
        &self.connection
    }

    pub fn state(&self) -> &Bits {
        &self.state
    }

    pub fn form(&self) -> LfsrForm {
        self.form
    }

    pub fn degree(&self) -> usize {
        self.state.len()
    }

    pub fn with_state(&self, state: Bits) -> Result<Self> {
        LfsrMachine::new(self.connection.clone(), state, self.form)
    }

    /// The bit emitted before the next step.
    pub fn output_bit(&self) -> bool {
        match self.form {
            LfsrForm::Fibonacci => self.state.get(0),
            LfsrForm::Galois => self.state.get(self.degree() - 1),
        }
    }

    /// One register update.
    pub fn step(&self) -> LfsrMachine {
        let n = self.degree();
        let mut next = Bits::zeros(n);
        match self.form {
            LfsrForm::Fibonacci => {
                let mut feedback = false;
                for i in 0..n {
                    if self.connection.coeff(i) {
                        feedback ^= self.state.get(i);
                    }
                }
                for i in 0..n - 1 {
                    next.set(i, self.state.get(i + 1));
                }
                next.set(n - 1, feedback);
            }
            LfsrForm::Galois => {
                let overflow = self.state.get(n - 1);
                for i in 1..n {
                    next.set(i, self.state.get(i - 1));
                }
                if overflow {
                    for i in 0..n {
                        if self.connection.coeff(i) {
                            next.set(i, !next.get(i));
                        }
                    }
                }
            }
        }
        LfsrMachine { connection: self.connection.clone(), state: next, form: self.form }
    }

    /// The first `len` output bits, starting from the current state.
    pub fn sequence(&self, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        let mut m = self.clone();
        for t in 0..len {
            out.set(t, m.output_bit());
            m = m.step();
        }
        out
    }
}

/// Largest state space cycle enumeration will traverse, in bits.
pub const STATE_SPACE_BOUND_BITS: usize = 20;

/// A finite machine whose states fit in a word, for exhaustive traversal.
pub trait StateSpace {
    fn state_bits(&self) -> usize;
    fn advance(&self, state: u64) -> u64;
}

impl StateSpace for LfsrMachine {
    fn state_bits(&self) -> usize {
        self.degree()
    }

    fn advance(&self, state: u64) -> u64 {
        let m = LfsrMachine {
            connection: self.connection.clone(),
            state: Bits::from_int(state, self.degree()),
            form: self.form,
        };
        m.step().state.to_int()
    }
}

impl StateSpace for LhcaMachine {
    fn state_bits(&self) -> usize {
        self.cell_count()
    }

    fn advance(&self, state: u64) -> u64 {
        let m = self
            .with_state(Bits::from_int(state, self.cell_count()))
            .expect("state width matches cell count");
        m.step().state().to_int()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleCount {
    pub length: u64,
    pub count: u64,
}

/// Decomposition of a machine's periodic states into cycles, as the
/// multiset {(cycle length, number of cycles)} sorted by length.
///
/// States on transient tails (possible when the transition map is not a
/// permutation) belong to no cycle and are not counted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleStructure {
    pub cycles: Vec<CycleCount>,
}

impl CycleStructure {
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        CycleStructure {
            cycles: pairs.iter().map(|&(length, count)| CycleCount { length, count }).collect(),
        }
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.cycles.iter().map(|c| format!("({},{})", c.length, c.count)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exhaustively decomposes the state space of `machine` into cycles.
pub fn cycle_structure(machine: &impl StateSpace) -> Result<CycleStructure> {
    let bits = machine.state_bits();
    if bits > STATE_SPACE_BOUND_BITS {
        return Err(Error::StateSpaceBound { bits, bound: STATE_SPACE_BOUND_BITS });
    }
    let total = 1usize << bits;
    // 0 = untouched, 1 = on the walk in progress, 2 = settled.
    let mut color = vec![0u8; total];
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for start in 0..total as u64 {
        if color[start as usize] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut s = start;
        while color[s as usize] == 0 {
            color[s as usize] = 1;
            path.push(s);
            s = machine.advance(s);
        }
        if color[s as usize] == 1 {
            let entry = path.iter().position(|&t| t == s).unwrap();
            *counts.entry((path.len() - entry) as u64).or_insert(0) += 1;
        }
        for t in path {
            color[t as usize] = 2;
        }
    }
    Ok(CycleStructure {
        cycles: counts.into_iter().map(|(length, count)| CycleCount { length, count }).collect(),
    })
}
