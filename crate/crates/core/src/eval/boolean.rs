//! Boolean functions, Walsh spectra, correlation immunity, and the
//! exhaustive linearity/immunity scan over all 256 elementary rules.

use serde::Serialize;

use crate::bits::Bits;
use crate::ca::Rule;
use crate::error::{Error, Result};

/// Largest arity the butterfly transform will accept (2^20-entry tables).
pub const WALSH_ARITY_BOUND: usize = 20;

/// A boolean function of `arity` inputs given by its full truth table;
/// entry `x` is the value on the input whose bits spell `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    arity: usize,
    table: Bits,
}

impl BooleanFunction {
    pub fn new(arity: usize, table: Bits) -> Result<Self> {
        if arity >= usize::BITS as usize || table.len() != 1 << arity {
            return Err(Error::invalid(
                "truth table",
                format!("length {} does not match arity {}", table.len(), arity),
            ));
        }
        Ok(BooleanFunction { arity, table })
    }

    /// The 3-variable local function of an elementary rule; input bit 2
    /// is the left neighbor, bit 1 the cell, bit 0 the right neighbor.
    pub fn from_rule(rule: Rule) -> Self {
        BooleanFunction { arity: 3, table: Bits::from_int(u64::from(rule.number()), 8) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &Bits {
        &self.table
    }

    pub fn evaluate(&self, x: u64) -> bool {
        self.table.get((x as usize) & ((1 << self.arity) - 1))
    }

    /// Number of inputs mapped to 1.
    pub fn weight(&self) -> u64 {
        self.table.count_ones() as u64
    }
}

/// The signed correlations W_f(w) = sum over x of (-1)^(f(x) + w.x),
/// indexed by the mask w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    arity: usize,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, mask: u64) -> i64 {
        self.values[mask as usize]
    }

    /// Sum of squared coefficients; always 2^(2 arity) by Parseval.
    pub fn energy(&self) -> i128 {
        self.values.iter().map(|&v| i128::from(v) * i128::from(v)).sum()
    }

    /// Absolute coefficient values in sorted order, for comparisons that
    /// should ignore mask labeling.
    pub fn abs_multiset(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.values.iter().map(|v| v.abs()).collect();
        out.sort_unstable();
        out
    }
}

/// Fast Walsh transform of the function's sign vector.
pub fn walsh_spectrum(f: &BooleanFunction) -> Result<WalshSpectrum> {
    if f.arity() > WALSH_ARITY_BOUND {
        return Err(Error::invalid(
            "arity",
            format!("{} exceeds the transform bound {}", f.arity(), WALSH_ARITY_BOUND),
        ));
    }
    let len = 1usize << f.arity();
    let mut values: Vec<i64> =
        (0..len).map(|x| if f.evaluate(x as u64) { -1 } else { 1 }).collect();
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for j in block..block + half {
                let (a, b) = (values[j], values[j + half]);
                values[j] = a + b;
                values[j + half] = a - b;
            }
        }
        half *= 2;
    }
    Ok(WalshSpectrum { arity: f.arity(), values })
}

/// Correlation immunity of order `m`: every mask of weight 1..=m has a
/// vanishing Walsh coefficient. Orders beyond the arity add no masks.
pub fn is_correlation_immune(f: &BooleanFunction, m: usize) -> Result<bool> {
    let spectrum = walsh_spectrum(f)?;
    let top = m.min(f.arity()) as u32;
    Ok((1..1u64 << f.arity())
        .filter(|w| (1..=top).contains(&w.count_ones()))
        .all(|w| spectrum.value(w) == 0))
}

/// True when f(x) = c + a.x for some mask a and constant c; equivalently
/// the spectrum reaches magnitude 2^arity, which Parseval forces to be
/// its only nonzero value.
pub fn is_linear(f: &BooleanFunction) -> Result<bool> {
    let spectrum = walsh_spectrum(f)?;
    let peak = 1i64 << f.arity();
    Ok(spectrum.values().iter().any(|&v| v.abs() == peak))
}

/// Classification of one rule function.
///
/// `ci1` is the sequence-level notion: the stream a rule generates can
/// only be first-order correlation-immune when the rule function is both
/// balanced and has a vanishing spectrum on the weight-1 masks
/// (1-resilience). A handful of unbalanced rules satisfy the weight-1
/// condition alone; their output is biased, so they are not immune
/// generators, and `balanced` exposes the distinction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleScanRow {
    pub rule: u8,
    pub linear: bool,
    pub balanced: bool,
    pub ci1: bool,
}

/// Result of scanning all 256 elementary rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleScan {
    pub rows: Vec<RuleScanRow>,
}

impl RuleScan {
    /// Rules that are simultaneously nonlinear and first-order immune as
    /// generators. Always empty: no such elementary rule exists.
    pub fn nonlinear_immune(&self) -> Vec<u8> {
        self.rows.iter().filter(|r| !r.linear && r.ci1).map(|r| r.rule).collect()
    }

    pub fn linear_rules(&self) -> Vec<u8> {
        self.rows.iter().filter(|r| r.linear).map(|r| r.rule).collect()
    }
}

/// Classifies every elementary rule's 3-variable function.
pub fn scan_elementary_rules() -> RuleScan {
    let rows = (0..=255u8)
        .map(|number| {
            let f = BooleanFunction::from_rule(Rule::new(number));
            let balanced = f.weight() == 4;
            let immune = is_correlation_immune(&f, 1).expect("arity 3");
            RuleScanRow {
                rule: number,
                linear: is_linear(&f).expect("arity 3"),
                balanced,
                ci1: balanced && immune,
            }
        })
        .collect();
    RuleScan { rows }
}
