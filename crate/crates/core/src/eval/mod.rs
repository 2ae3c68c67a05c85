//! Pseudo-randomness evaluation: Walsh spectra and correlation immunity,
//! the exhaustive elementary-rule scan, window entropy, and the
//! statistical test battery.

mod battery;
mod boolean;
mod entropy;

pub use battery::{
    battery, chi_square_test, entropy_report, long_run_test, monobit_test, monte_carlo_test,
    poker_test, runs_test, serial_correlation_test, BatteryTest, NamedValue, TestReport,
    CHI_SQUARE_BYTE_BOUNDS, CHI_SQUARE_MIN_BITS, ENTROPY_DEFAULT_WINDOW,
    ENTROPY_RATIO_THRESHOLD, FIPS_SEQUENCE_BITS, LONG_RUN_LIMIT, MONOBIT_BOUNDS,
    MONTE_CARLO_MIN_POINTS, MONTE_CARLO_POINT_BITS, MONTE_CARLO_TOLERANCE, POKER_BOUNDS,
    RUN_BANDS, SERIAL_MIN_BITS,
};
pub use boolean::{
    is_correlation_immune, is_linear, scan_elementary_rules, walsh_spectrum, BooleanFunction,
    RuleScan, RuleScanRow, WalshSpectrum, WALSH_ARITY_BOUND,
};
pub use entropy::koza_entropy;
