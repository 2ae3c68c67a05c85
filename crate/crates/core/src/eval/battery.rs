//! Classical randomness tests: the four FIPS 140-2 tests plus byte
//! chi-square, serial correlation, Monte Carlo pi, and a window-entropy
//! wrapper. Every threshold is pinned here as a named constant.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::Error;
use crate::eval::entropy::koza_entropy;

/// The FIPS 140-2 tests consume exactly this many bits.
pub const FIPS_SEQUENCE_BITS: usize = 20_000;
/// Monobit acceptance: ones strictly between these.
pub const MONOBIT_BOUNDS: (u64, u64) = (9_725, 10_275);
/// Poker statistic acceptance, strict.
pub const POKER_BOUNDS: (f64, f64) = (2.16, 46.17);
/// Inclusive acceptance bands for run lengths 1..=5 and 6-or-more,
/// applied to the zero runs and the one runs separately.
pub const RUN_BANDS: [(u64, u64); 6] =
    [(2_315, 2_685), (1_114, 1_386), (527, 723), (240, 384), (103, 209), (103, 209)];
/// A run this long or longer fails the long-run test.
pub const LONG_RUN_LIMIT: u64 = 26;
/// Acceptance band for the byte-frequency chi-square statistic
/// (255 degrees of freedom, central 99%).
pub const CHI_SQUARE_BYTE_BOUNDS: (f64, f64) = (200.6, 317.0);
/// Minimum input for the chi-square test (1280 complete bytes).
pub const CHI_SQUARE_MIN_BITS: usize = 10_240;
/// Minimum input for the serial correlation coefficient.
pub const SERIAL_MIN_BITS: usize = 100;
/// Bits consumed per Monte Carlo point (24 per coordinate).
pub const MONTE_CARLO_POINT_BITS: usize = 48;
/// Minimum number of Monte Carlo points.
pub const MONTE_CARLO_MIN_POINTS: usize = 10_000;
/// Acceptance radius around pi for the Monte Carlo estimate.
pub const MONTE_CARLO_TOLERANCE: f64 = 0.05;
/// Default window length for the entropy report.
pub const ENTROPY_DEFAULT_WINDOW: usize = 4;
/// The entropy report passes when entropy / window >= this ratio.
pub const ENTROPY_RATIO_THRESHOLD: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

impl NamedValue {
    fn new(name: &str, value: f64) -> Self {
        NamedValue { name: name.into(), value }
    }
}

/// Outcome of one statistical test on one sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub test: String,
    pub bits: usize,
    pub params: Vec<NamedValue>,
    pub statistics: Vec<NamedValue>,
    pub pass: bool,
    pub error: Option<String>,
}

impl TestReport {
    fn failed_precondition(test: &str, bits: usize, error: Error) -> Self {
        TestReport {
            test: test.into(),
            bits,
            params: Vec::new(),
            statistics: Vec::new(),
            pass: false,
            error: Some(error.to_string()),
        }
    }
}

/// One selectable battery member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatteryTest {
    Monobit,
    Poker,
    Runs,
    LongRun,
    ChiSquare,
    Serial,
    MonteCarlo,
    Entropy,
}

impl BatteryTest {
    pub const ALL: [BatteryTest; 8] = [
        BatteryTest::Monobit,
        BatteryTest::Poker,
        BatteryTest::Runs,
        BatteryTest::LongRun,
        BatteryTest::ChiSquare,
        BatteryTest::Serial,
        BatteryTest::MonteCarlo,
        BatteryTest::Entropy,
    ];

    /// The four FIPS 140-2 members.
    pub const FIPS: [BatteryTest; 4] =
        [BatteryTest::Monobit, BatteryTest::Poker, BatteryTest::Runs, BatteryTest::LongRun];

    pub fn name(&self) -> &'static str {
        match self {
            BatteryTest::Monobit => "monobit",
            BatteryTest::Poker => "poker",
            BatteryTest::Runs => "runs",
            BatteryTest::LongRun => "long-run",
            BatteryTest::ChiSquare => "chi2",
            BatteryTest::Serial => "serial",
            BatteryTest::MonteCarlo => "montecarlo",
            BatteryTest::Entropy => "entropy",
        }
    }
}

impl fmt::Display for BatteryTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BatteryTest {
    type Err = Error;

    fn from_str(s: &str) -> Result<BatteryTest, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "monobit" => Ok(BatteryTest::Monobit),
            "poker" => Ok(BatteryTest::Poker),
            "runs" => Ok(BatteryTest::Runs),
            "long-run" | "longrun" => Ok(BatteryTest::LongRun),
            "chi2" | "chi-square" => Ok(BatteryTest::ChiSquare),
            "serial" => Ok(BatteryTest::Serial),
            "montecarlo" | "monte-carlo" => Ok(BatteryTest::MonteCarlo),
            "entropy" => Ok(BatteryTest::Entropy),
            other => Err(Error::invalid("test name", other)),
        }
    }
}

fn require_fips_length(test: &str, s: &Bits) -> Option<TestReport> {
    if s.len() != FIPS_SEQUENCE_BITS {
        return Some(TestReport::failed_precondition(
            test,
            s.len(),
            Error::InsufficientLength { needed: FIPS_SEQUENCE_BITS, got: s.len() },
        ));
    }
    None
}

/// FIPS 140-2 monobit test: the number of ones in 20000 bits.
pub fn monobit_test(s: &Bits) -> TestReport {
    if let Some(report) = require_fips_length("monobit", s) {
        return report;
    }
    let ones = s.count_ones() as u64;
    TestReport {
        test: "monobit".into(),
        bits: s.len(),
        params: vec![
            NamedValue::new("low", MONOBIT_BOUNDS.0 as f64),
            NamedValue::new("high", MONOBIT_BOUNDS.1 as f64),
        ],
        statistics: vec![NamedValue::new("ones", ones as f64)],
        pass: ones > MONOBIT_BOUNDS.0 && ones < MONOBIT_BOUNDS.1,
        error: None,
    }
}

/// FIPS 140-2 poker test on the 5000 non-overlapping 4-bit segments.
pub fn poker_test(s: &Bits) -> TestReport {
    if let Some(report) = require_fips_length("poker", s) {
        return report;
    }
    let segments = s.len() / 4;
    let mut counts = [0u64; 16];
    for i in 0..segments {
        let mut value = 0usize;
        for j in 0..4 {
            value = (value << 1) | usize::from(s.get(4 * i + j));
        }
        counts[value] += 1;
    }
    let squares: f64 = counts.iter().map(|&c| (c as f64) * (c as f64)).sum();
    let statistic = 16.0 / segments as f64 * squares - segments as f64;
    TestReport {
        test: "poker".into(),
        bits: s.len(),
        params: vec![
            NamedValue::new("low", POKER_BOUNDS.0),
            NamedValue::new("high", POKER_BOUNDS.1),
        ],
        statistics: vec![NamedValue::new("statistic", statistic)],
        pass: statistic > POKER_BOUNDS.0 && statistic < POKER_BOUNDS.1,
        error: None,
    }
}

/// Maximal-run-length census: counts[symbol][len 1..=5, 6+].
fn run_census(s: &Bits) -> ([u64; 6], [u64; 6], u64) {
    let mut zero_runs = [0u64; 6];
    let mut one_runs = [0u64; 6];
    let mut longest = 0u64;
    let mut i = 0;
    while i < s.len() {
        let symbol = s.get(i);
        let mut j = i + 1;
        while j < s.len() && s.get(j) == symbol {
            j += 1;
        }
        let len = (j - i) as u64;
        longest = longest.max(len);
        let bucket = (len.min(6) - 1) as usize;
        if symbol {
            one_runs[bucket] += 1;
        } else {
            zero_runs[bucket] += 1;
        }
        i = j;
    }
    (zero_runs, one_runs, longest)
}

/// FIPS 140-2 runs test: per-length run counts of each symbol must fall
/// inside the pinned bands (inclusive).
pub fn runs_test(s: &Bits) -> TestReport {
    if let Some(report) = require_fips_length("runs", s) {
        return report;
    }
    let (zero_runs, one_runs, _) = run_census(s);
    let mut statistics = Vec::with_capacity(12);
    let mut pass = true;
    for (idx, band) in RUN_BANDS.iter().enumerate() {
        let label = if idx == 5 { "6+".to_string() } else { (idx + 1).to_string() };
        for (symbol, counts) in [("zeros", &zero_runs), ("ones", &one_runs)] {
            let count = counts[idx];
            statistics.push(NamedValue::new(&format!("{symbol}-len-{label}"), count as f64));
            pass &= count >= band.0 && count <= band.1;
        }
    }
    let params = RUN_BANDS
        .iter()
        .enumerate()
        .flat_map(|(idx, band)| {
            let label = if idx == 5 { "6+".to_string() } else { (idx + 1).to_string() };
            [
                NamedValue::new(&format!("band-{label}-low"), band.0 as f64),
                NamedValue::new(&format!("band-{label}-high"), band.1 as f64),
            ]
        })
        .collect();
    TestReport { test: "runs".into(), bits: s.len(), params, statistics, pass, error: None }
}

/// FIPS 140-2 long-run test: no run of 26 or more identical bits.
pub fn long_run_test(s: &Bits) -> TestReport {
    if let Some(report) = require_fips_length("long-run", s) {
        return report;
    }
    let (_, _, longest) = run_census(s);
    TestReport {
        test: "long-run".into(),
        bits: s.len(),
        params: vec![NamedValue::new("limit", LONG_RUN_LIMIT as f64)],
        statistics: vec![NamedValue::new("longest-run", longest as f64)],
        pass: longest < LONG_RUN_LIMIT,
        error: None,
    }
}

/// Chi-square statistic of the byte-value frequencies over the complete
/// 8-bit groups of the sequence (first bit of each group most
/// significant), against the uniform expectation.
pub fn chi_square_test(s: &Bits) -> TestReport {
    if s.len() < CHI_SQUARE_MIN_BITS {
        return TestReport::failed_precondition(
            "chi2",
            s.len(),
            Error::InsufficientLength { needed: CHI_SQUARE_MIN_BITS, got: s.len() },
        );
    }
    let bytes = s.len() / 8;
    let mut counts = [0u64; 256];
    for i in 0..bytes {
        let mut value = 0usize;
        for j in 0..8 {
            value = (value << 1) | usize::from(s.get(8 * i + j));
        }
        counts[value] += 1;
    }
    let expected = bytes as f64 / 256.0;
    let statistic: f64 =
        counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    TestReport {
        test: "chi2".into(),
        bits: s.len(),
        params: vec![
            NamedValue::new("low", CHI_SQUARE_BYTE_BOUNDS.0),
            NamedValue::new("high", CHI_SQUARE_BYTE_BOUNDS.1),
            NamedValue::new("bytes", bytes as f64),
        ],
        statistics: vec![NamedValue::new("statistic", statistic)],
        pass: statistic > CHI_SQUARE_BYTE_BOUNDS.0 && statistic < CHI_SQUARE_BYTE_BOUNDS.1,
        error: None,
    }
}

/// Pearson correlation between the sequence and its one-step shift
/// (non-cyclic). A constant sequence is reported as coefficient 1.
pub fn serial_correlation_test(s: &Bits) -> TestReport {
    if s.len() < SERIAL_MIN_BITS {
        return TestReport::failed_precondition(
            "serial",
            s.len(),
            Error::InsufficientLength { needed: SERIAL_MIN_BITS, got: s.len() },
        );
    }
    let pairs = (s.len() - 1) as f64;
    let (mut sum_x, mut sum_y, mut sum_xy) = (0f64, 0f64, 0f64);
    for i in 0..s.len() - 1 {
        let x = f64::from(u8::from(s.get(i)));
        let y = f64::from(u8::from(s.get(i + 1)));
        sum_x += x;
        sum_y += y;
        sum_xy += x * y;
    }
    // For 0/1 data the sum of squares equals the plain sum.
    let var_x = pairs * sum_x - sum_x * sum_x;
    let var_y = pairs * sum_y - sum_y * sum_y;
    let coefficient = if var_x <= 0.0 || var_y <= 0.0 {
        1.0
    } else {
        (pairs * sum_xy - sum_x * sum_y) / (var_x * var_y).sqrt()
    };
    let threshold = 4.0 / pairs.sqrt();
    TestReport {
        test: "serial".into(),
        bits: s.len(),
        params: vec![NamedValue::new("threshold", threshold)],
        statistics: vec![NamedValue::new("coefficient", coefficient)],
        pass: coefficient.abs() < threshold,
        error: None,
    }
}

/// Monte Carlo estimate of pi from consecutive 48-bit points in the unit
/// square (24 bits per coordinate, first bit most significant).
pub fn monte_carlo_test(s: &Bits) -> TestReport {
    let points = s.len() / MONTE_CARLO_POINT_BITS;
    if points < MONTE_CARLO_MIN_POINTS {
        return TestReport::failed_precondition(
            "montecarlo",
            s.len(),
            Error::InsufficientLength {
                needed: MONTE_CARLO_MIN_POINTS * MONTE_CARLO_POINT_BITS,
                got: s.len(),
            },
        );
    }
    let coordinate = |start: usize| {
        let mut value = 0u32;
        for j in 0..24 {
            value = (value << 1) | u32::from(s.get(start + j));
        }
        f64::from(value) / f64::from(1u32 << 24)
    };
    let mut inside = 0u64;
    for p in 0..points {
        let x = coordinate(MONTE_CARLO_POINT_BITS * p);
        let y = coordinate(MONTE_CARLO_POINT_BITS * p + 24);
        if x * x + y * y < 1.0 {
            inside += 1;
        }
    }
    let estimate = 4.0 * inside as f64 / points as f64;
    TestReport {
        test: "montecarlo".into(),
        bits: s.len(),
        params: vec![
            NamedValue::new("points", points as f64),
            NamedValue::new("tolerance", MONTE_CARLO_TOLERANCE),
        ],
        statistics: vec![
            NamedValue::new("estimate", estimate),
            NamedValue::new("error", (estimate - PI).abs()),
        ],
        pass: (estimate - PI).abs() < MONTE_CARLO_TOLERANCE,
        error: None,
    }
}

/// Window-entropy report: passes when the length-`window` entropy is at
/// least ENTROPY_RATIO_THRESHOLD of its maximum.
pub fn entropy_report(s: &Bits, window: usize) -> TestReport {
    match koza_entropy(s, window) {
        Ok(entropy) => TestReport {
            test: "entropy".into(),
            bits: s.len(),
            params: vec![
                NamedValue::new("window", window as f64),
                NamedValue::new("ratio-threshold", ENTROPY_RATIO_THRESHOLD),
            ],
            statistics: vec![NamedValue::new("entropy", entropy)],
            pass: entropy >= ENTROPY_RATIO_THRESHOLD * window as f64,
            error: None,
        },
        Err(e) => TestReport::failed_precondition("entropy", s.len(), e),
    }
}

/// Runs the selected tests in canonical order (duplicates collapsed).
pub fn battery(s: &Bits, tests: &[BatteryTest]) -> Vec<TestReport> {
    let mut selected: Vec<BatteryTest> = tests.to_vec();
    selected.sort();
    selected.dedup();
    selected
        .into_iter()
        .map(|t| match t {
            BatteryTest::Monobit => monobit_test(s),
            BatteryTest::Poker => poker_test(s),
            BatteryTest::Runs => runs_test(s),
            BatteryTest::LongRun => long_run_test(s),
            BatteryTest::ChiSquare => chi_square_test(s),
            BatteryTest::Serial => serial_correlation_test(s),
            BatteryTest::MonteCarlo => monte_carlo_test(s),
            BatteryTest::Entropy => entropy_report(s, ENTROPY_DEFAULT_WINDOW),
        })
        .collect()
}
