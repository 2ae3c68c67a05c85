//! `hca`: synthesis, simulation and evaluation of 90/150 hybrid cellular
//! automata and related linear machines over GF(2).

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use hca_core::bits::Bits;
use hca_core::boolfunc::{parity_check_poly, realize_as_lhca, ExponentFamily, TraceMonomial};
use hca_core::ca::{diagram_pbm, diagram_text, Boundary, Configuration, Rule};
use hca_core::eval::{battery, scan_elementary_rules, BatteryTest, TestReport};
use hca_core::gf2::default_primitive;
use hca_core::lfsr::{cycle_structure, CycleStructure, LfsrForm, LfsrMachine};
use hca_core::lhca::{synthesize, LhcaMachine, RuleVector};
use hca_core::{Error, FieldElement, Gf2Poly};

type CliResult = Result<(), Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "hca", version, about = "90/150 hybrid CA synthesis and sequence analysis")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Render polynomials as hex coefficient masks instead of symbolic form.
    #[arg(long, global = true)]
    hex: bool,

    /// Seed for internally drawn randomness, e.g. an omitted machine seed.
    #[arg(long, global = true, default_value_t = 0x1ca)]
    rng_seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the 90/150 rule vectors whose characteristic polynomial
    /// is the given irreducible polynomial; canonical realization first.
    Synth {
        /// Target polynomial, symbolic ("x^4+x+1") or hex mask ("0x13").
        #[arg(long)]
        poly: String,
        /// Re-derive each realization's characteristic polynomial and fail
        /// on any mismatch.
        #[arg(long)]
        verify: bool,
    },

    /// Characteristic polynomial of a 90/150 rule vector.
    Charpoly {
        /// Rule vector as a 0/1 string, 1 selecting rule 150.
        #[arg(long)]
        rules: String,
    },

    /// Time-space diagram of an elementary CA.
    Evolve {
        /// Rule number 0-255.
        #[arg(long)]
        rule: u8,
        /// Initial configuration: 0/1 string, or hex mask with --width.
        #[arg(long)]
        seed: String,
        /// Cell count when the seed is hex.
        #[arg(long)]
        width: Option<usize>,
        /// Number of steps; the diagram has steps+1 rows.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Cyclic)]
        boundary: BoundaryArg,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Text)]
        format: DiagramFormat,
    },

    /// Generate a bit stream from an elementary CA cell, an LHCA, an LFSR
    /// or a trace-monomial boolean function.
    Gen(GenArgs),

    /// Exhaustive cycle structure of a machine's state space.
    Cycles {
        #[arg(long, value_enum)]
        machine: MachineKind,
        /// Connection / characteristic polynomial. For an LHCA the canonical
        /// synthesized realization is used unless --rules is given.
        #[arg(long)]
        poly: Option<String>,
        /// Explicit LHCA rule vector, bypassing synthesis.
        #[arg(long)]
        rules: Option<String>,
        #[arg(long, value_enum, default_value_t = FormArg::Fibonacci)]
        form: FormArg,
    },

    /// Scan all 256 elementary rules for linearity, balance and first-order
    /// correlation immunity.
    ScanRules,

    /// Run randomness tests over a bit sequence.
    Test {
        /// Input file, or - for stdin.
        #[arg(long = "in")]
        input: String,
        /// Comma-separated tests: fips, monobit, poker, runs, long-run,
        /// chi2, serial, montecarlo, entropy, or all.
        #[arg(long, default_value = "all")]
        battery: String,
        #[arg(long, value_enum, default_value_t = EncodingArg::Auto)]
        encoding: EncodingArg,
    },

    /// Minimal polynomial of a field element.
    Minpoly {
        /// Field modulus (irreducible).
        #[arg(long)]
        modulus: String,
        /// Element as a polynomial-basis value: symbolic or hex mask.
        #[arg(long, conflicts_with = "power")]
        element: Option<String>,
        /// Element given as the k-th power of the generator x.
        #[arg(long)]
        power: Option<u128>,
    },

    /// Trace-monomial boolean function f(x) = Tr(ax + bx^s) for the
    /// classical exponent families.
    Boolfunc(BoolfuncArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Elementary rule number; the stream reads one cell of a ring.
    #[arg(long, group = "source")]
    rule: Option<u8>,
    /// Cell index to read in --rule mode.
    #[arg(long, default_value_t = 0)]
    cell: usize,
    /// Ring width in --rule mode; defaults to the seed length.
    #[arg(long)]
    width: Option<usize>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Cyclic)]
    boundary: BoundaryArg,

    /// 90/150 rule vector; the stream reads cell 0.
    #[arg(long, group = "source")]
    lhca: Option<String>,

    /// LFSR connection polynomial.
    #[arg(long, group = "source")]
    lfsr: Option<String>,
    #[arg(long, value_enum, default_value_t = FormArg::Fibonacci)]
    form: FormArg,

    /// Trace-monomial stream for the given exponent family; see also
    /// --n, --i, --a, --b, --modulus.
    #[arg(long, group = "source", value_enum)]
    boolfunc: Option<FamilyArg>,
    #[command(flatten)]
    trace: TraceArgs,

    /// Initial state: 0/1 string or hex mask. Omitted: drawn from --rng-seed.
    #[arg(long)]
    seed: Option<String>,
    /// Stream length.
    #[arg(long)]
    bits: usize,
}

#[derive(Args)]
struct TraceArgs {
    /// Field degree.
    #[arg(long)]
    n: Option<usize>,
    /// Family parameter for gold/kasami.
    #[arg(long)]
    i: Option<usize>,
    /// Coefficient of the linear term, hex mask in the polynomial basis.
    #[arg(long, default_value = "1")]
    a: String,
    /// Coefficient of the power term, hex mask in the polynomial basis.
    #[arg(long, default_value = "1")]
    b: String,
    /// Field modulus; defaults to a fixed primitive polynomial of degree n.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct BoolfuncArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[command(flatten)]
    trace: TraceArgs,

    /// Print the truth table as a 0/1 string of length 2^n.
    #[arg(long, group = "action")]
    table: bool,
    /// Print this many bits of the generator-power stream u_t.
    #[arg(long, group = "action", value_name = "N")]
    stream: Option<usize>,
    /// Print the parity-check polynomial of the filtered stream.
    #[arg(long, group = "action")]
    parity: bool,
    /// Print the composed LHCA realization, one block per line.
    #[arg(long, group = "action")]
    lhca: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Cyclic,
    Null,
}

impl From<BoundaryArg> for Boundary {
    fn from(value: BoundaryArg) -> Boundary {
        match value {
            BoundaryArg::Cyclic => Boundary::Cyclic,
            BoundaryArg::Null => Boundary::Null,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Text,
    Pbm,
}

#[derive(Clone, Copy, ValueEnum)]
enum MachineKind {
    Lfsr,
    Lhca,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Fibonacci,
    Galois,
}

impl From<FormArg> for LfsrForm {
    fn from(value: FormArg) -> LfsrForm {
        match value {
            FormArg::Fibonacci => LfsrForm::Fibonacci,
            FormArg::Galois => LfsrForm::Galois,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gold,
    Kasami,
    Welch,
    Niho,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    /// ASCII 0/1 when the input contains only 0, 1 and whitespace,
    /// raw bytes otherwise.
    Auto,
    Ascii,
    Raw,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let out = Output { json: cli.json, hex: cli.hex };
    match cli.command {
        Command::Synth { poly, verify } => cmd_synth(&out, &poly, verify),
        Command::Charpoly { rules } => cmd_charpoly(&out, &rules),
        Command::Evolve { rule, seed, width, steps, boundary, format } => {
            cmd_evolve(&out, rule, &seed, width, steps, boundary.into(), format)
        }
        Command::Gen(args) => cmd_gen(&out, cli.rng_seed, args),
        Command::Cycles { machine, poly, rules, form } => {
            cmd_cycles(&out, machine, poly.as_deref(), rules.as_deref(), form.into())
        }
        Command::ScanRules => cmd_scan_rules(&out),
        Command::Test { input, battery, encoding } => {
            cmd_test(&out, &input, &battery, encoding)
        }
        Command::Minpoly { modulus, element, power } => {
            cmd_minpoly(&out, &modulus, element.as_deref(), power)
        }
        Command::Boolfunc(args) => cmd_boolfunc(&out, args),
    }
}

struct Output {
    json: bool,
    hex: bool,
}

impl Output {
    fn poly(&self, p: &Gf2Poly) -> String {
        if self.hex {
            p.to_hex()
        } else {
            p.to_string()
        }
    }
}

fn cmd_synth(out: &Output, poly: &str, verify: bool) -> CliResult {
    let p = parse_poly(poly)?;
    let realizations = synthesize(&p)?;
    let rendered: Vec<String> = realizations.iter().map(RuleVector::to_string).collect();

    let mut charpolys = Vec::new();
    if verify {
        for r in &realizations {
            let derived = r.char_poly();
            if derived != p {
                return Err(Error::SynthesisInvariant {
                    poly: p.to_string(),
                    detail: format!("realization {r} re-derives to {derived}"),
                }
                .into());
            }
            charpolys.push(out.poly(&derived));
        }
    }

    if out.json {
        let mut object = json!({
            "poly": out.poly(&p),
            "realizations": rendered,
            "canonical": rendered[0],
        });
        if verify {
            object["charpolys"] = json!(charpolys);
            object["verified"] = json!(true);
        }
        println!("{object}");
    } else {
        for line in &rendered {
            println!("{line}");
        }
        if verify {
            eprintln!("verified: characteristic polynomial {}", out.poly(&p));
        }
    }
    Ok(())
}

fn cmd_charpoly(out: &Output, rules: &str) -> CliResult {
    let vector: RuleVector = rules.parse()?;
    let p = vector.char_poly();
    if out.json {
        println!("{}", json!({ "rules": vector.to_string(), "charpoly": out.poly(&p) }));
    } else {
        println!("{}", out.poly(&p));
    }
    Ok(())
}

fn cmd_evolve(
    out: &Output,
    rule: u8,
    seed: &str,
    width: Option<usize>,
    steps: usize,
    boundary: Boundary,
    format: DiagramFormat,
) -> CliResult {
    let cells = parse_bits(seed, width)?;
    let config = Configuration::new(cells, boundary)?;
    let rows = config.evolve(Rule::new(rule), steps);
    if out.json {
        let lines: Vec<String> = rows.iter().map(|r| r.cells().to_string()).collect();
        println!("{}", json!({ "rule": rule, "rows": lines }));
    } else {
        match format {
            DiagramFormat::Text => print!("{}", diagram_text(&rows)),
            DiagramFormat::Pbm => print!("{}", diagram_pbm(&rows)?),
        }
    }
    Ok(())
}

fn cmd_gen(out: &Output, rng_seed: u64, args: GenArgs) -> CliResult {
    if args.bits == 0 {
        return Err(Error::invalid("gen", "--bits must be positive").into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);

    let stream = if let Some(rule) = args.rule {
        let cells = state_bits(args.seed.as_deref(), args.width, &mut rng)?;
        let config = Configuration::new(cells, args.boundary.into())?;
        config.cell_sequence(Rule::new(rule), args.cell, args.bits - 1)?
    } else if let Some(rules) = &args.lhca {
        let vector: RuleVector = rules.parse()?;
        let cells = state_bits(args.seed.as_deref(), Some(vector.len()), &mut rng)?;
        LhcaMachine::atomic(vector, cells)?.sequence(args.bits)
    } else if let Some(poly) = &args.lfsr {
        let connection = parse_poly(poly)?;
        let degree = connection
            .degree()
            .ok_or_else(|| Error::invalid("gen", "zero connection polynomial"))?;
        let cells = state_bits(args.seed.as_deref(), Some(degree), &mut rng)?;
        LfsrMachine::new(connection, cells, args.form.into())?.sequence(args.bits)
    } else if let Some(family) = args.boolfunc {
        let f = trace_monomial(family, &args.trace)?;
        f.power_sequence(args.bits)?
    } else {
        return Err(Error::invalid(
            "gen",
            "pick a source: --rule, --lhca, --lfsr or --boolfunc",
        )
        .into());
    };

    if out.json {
        println!("{}", json!({ "bits": stream.to_string() }));
    } else {
        println!("{stream}");
    }
    Ok(())
}

fn cmd_cycles(
    out: &Output,
    machine: MachineKind,
    poly: Option<&str>,
    rules: Option<&str>,
    form: LfsrForm,
) -> CliResult {
    let structure: CycleStructure = match machine {
        MachineKind::Lfsr => {
            let spec = poly.ok_or_else(|| Error::invalid("cycles", "--poly is required"))?;
            let connection = parse_poly(spec)?;
            let degree = connection
                .degree()
                .ok_or_else(|| Error::invalid("cycles", "zero connection polynomial"))?;
            let machine = LfsrMachine::new(connection, Bits::zeros(degree), form)?;
            cycle_structure(&machine)?
        }
        MachineKind::Lhca => {
            let vector: RuleVector = match (rules, poly) {
                (Some(rules), _) => rules.parse()?,
                (None, Some(spec)) => synthesize(&parse_poly(spec)?)?.remove(0),
                (None, None) => {
                    return Err(Error::invalid("cycles", "--poly or --rules is required").into())
                }
            };
            let cells = vector.len();
            let machine = LhcaMachine::atomic(vector, Bits::zeros(cells))?;
            cycle_structure(&machine)?
        }
    };

    if out.json {
        println!("{}", serde_json::to_string(&structure)?);
    } else {
        println!("{structure}");
    }
    Ok(())
}

fn cmd_scan_rules(out: &Output) -> CliResult {
    let scan = scan_elementary_rules();
    if out.json {
        println!("{}", serde_json::to_string(&scan)?);
    } else {
        println!("rule,linear,balanced,ci1");
        for row in &scan.rows {
            println!("{},{},{},{}", row.rule, row.linear, row.balanced, row.ci1);
        }
    }
    Ok(())
}

fn cmd_test(out: &Output, input: &str, selection: &str, encoding: EncodingArg) -> CliResult {
    let sequence = read_sequence(input, encoding)?;
    let tests = parse_battery(selection)?;
    let reports = battery(&sequence, &tests);

    if out.json {
        println!("{}", serde_json::to_string(&reports)?);
    } else {
        for report in &reports {
            println!("{}", report_line(report));
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(format!("{failed} of {} tests did not pass", reports.len()).into())
    }
}

fn report_line(report: &TestReport) -> String {
    let verdict = match (&report.error, report.pass) {
        (Some(e), _) => return format!("{}: error ({e})", report.test),
        (None, true) => "pass",
        (None, false) => "fail",
    };
    let stats: Vec<String> = report
        .statistics
        .iter()
        .map(|s| format!("{}={}", s.name, trim_float(s.value)))
        .collect();
    if stats.is_empty() {
        format!("{}: {verdict}", report.test)
    } else {
        format!("{}: {verdict} ({})", report.test, stats.join(", "))
    }
}

fn trim_float(value: f64) -> String {
    if value == value.trunc() && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        format!("{value:.6}")
    }
}

fn cmd_minpoly(
    out: &Output,
    modulus: &str,
    element: Option<&str>,
    power: Option<u128>,
) -> CliResult {
    let modulus = parse_poly(modulus)?;
    let element = match (element, power) {
        (Some(spec), None) => FieldElement::new(parse_poly(spec)?, modulus)?,
        (None, Some(k)) => FieldElement::generator(modulus)?.pow(k),
        _ => return Err(Error::invalid("minpoly", "give exactly one of --element, --power").into()),
    };
    let minimal = element.minimal_polynomial();
    if out.json {
        println!(
            "{}",
            json!({
                "element": out.poly(element.value()),
                "modulus": out.poly(element.modulus()),
                "minpoly": out.poly(&minimal),
            })
        );
    } else {
        println!("{}", out.poly(&minimal));
    }
    Ok(())
}

fn cmd_boolfunc(out: &Output, args: BoolfuncArgs) -> CliResult {
    let f = trace_monomial(args.family, &args.trace)?;
    let modulus = f.coefficients().0.modulus().clone();
    let s = f.exponent();

    if args.table {
        let table = f.truth_table()?;
        if out.json {
            println!("{}", json!({ "s": s, "table": table.table().to_string() }));
        } else {
            println!("{}", table.table());
        }
    } else if let Some(len) = args.stream {
        let stream = f.power_sequence(len)?;
        if out.json {
            println!("{}", json!({ "s": s, "bits": stream.to_string() }));
        } else {
            println!("{stream}");
        }
    } else if args.parity {
        let parity = parity_check_poly(s, &modulus)?;
        if out.json {
            println!("{}", json!({ "s": s, "parity": out.poly(&parity) }));
        } else {
            println!("{}", out.poly(&parity));
        }
    } else if args.lhca {
        let machine = realize_as_lhca(s, &modulus)?;
        let blocks: Vec<String> =
            machine.blocks().iter().map(RuleVector::to_string).collect();
        if out.json {
            println!(
                "{}",
                json!({
                    "s": s,
                    "blocks": blocks,
                    "charpoly": out.poly(&machine.char_poly()),
                })
            );
        } else {
            for block in &blocks {
                println!("{block}");
            }
        }
    } else if out.json {
        println!(
            "{}",
            json!({
                "family": family_name(args.family),
                "n": f.field_degree(),
                "s": s,
                "modulus": out.poly(&modulus),
            })
        );
    } else {
        println!("family={} n={} s={s} modulus={}", family_name(args.family), f.field_degree(), out.poly(&modulus));
    }
    Ok(())
}

fn family_name(family: FamilyArg) -> &'static str {
    match family {
        FamilyArg::Gold => "gold",
        FamilyArg::Kasami => "kasami",
        FamilyArg::Welch => "welch",
        FamilyArg::Niho => "niho",
    }
}

fn trace_monomial(family: FamilyArg, args: &TraceArgs) -> Result<TraceMonomial, Box<dyn std::error::Error>> {
    let n = args.n.ok_or_else(|| Error::invalid("boolfunc", "--n is required"))?;
    let family = match family {
        FamilyArg::Gold => ExponentFamily::Gold {
            n,
            i: args.i.ok_or_else(|| Error::invalid("boolfunc", "gold needs --i"))?,
        },
        FamilyArg::Kasami => ExponentFamily::Kasami {
            n,
            i: args.i.ok_or_else(|| Error::invalid("boolfunc", "kasami needs --i"))?,
        },
        FamilyArg::Welch => ExponentFamily::Welch { n },
        FamilyArg::Niho => ExponentFamily::Niho { n },
    };
    let s = family.exponent()?;
    let modulus = match &args.modulus {
        Some(spec) => parse_poly(spec)?,
        None => default_primitive(n)?,
    };
    let a = FieldElement::new(parse_poly(&args.a)?, modulus.clone())?;
    let b = FieldElement::new(parse_poly(&args.b)?, modulus)?;
    Ok(TraceMonomial::new(a, b, s)?)
}

/// Symbolic polynomial, 0x-prefixed hex mask, or bare hex mask.
fn parse_poly(spec: &str) -> Result<Gf2Poly, Error> {
    if let Ok(p) = spec.parse() {
        return Ok(p);
    }
    let mask = u128::from_str_radix(spec, 16)
        .map_err(|_| Error::invalid("polynomial", format!("cannot parse {spec:?}")))?;
    Ok(Gf2Poly::from_int(mask))
}

/// 0/1 string, or hex mask paired with an explicit width.
fn parse_bits(spec: &str, width: Option<usize>) -> Result<Bits, Error> {
    if !spec.is_empty() && spec.chars().all(|c| c == '0' || c == '1') {
        let bits: Bits = spec.parse()?;
        if let Some(w) = width {
            if w != bits.len() {
                return Err(Error::invalid(
                    "seed",
                    format!("0/1 seed has {} cells but --width says {w}", bits.len()),
                ));
            }
        }
        return Ok(bits);
    }
    let width = width.ok_or_else(|| Error::invalid("seed", "hex seeds need --width"))?;
    Bits::from_hex(spec, width)
}

/// Machine seed: parsed when given, otherwise a nonzero draw from the RNG.
fn state_bits(
    spec: Option<&str>,
    width: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Bits, Error> {
    match spec {
        Some(s) => parse_bits(s, width),
        None => {
            let width =
                width.ok_or_else(|| Error::invalid("seed", "omitted seeds need --width"))?;
            loop {
                let bits: Bits = (0..width).map(|_| rng.gen::<bool>()).collect();
                if !bits.is_all_zero() {
                    return Ok(bits);
                }
            }
        }
    }
}

fn read_sequence(path: &str, encoding: EncodingArg) -> Result<Bits, Box<dyn std::error::Error>> {
    let raw = if path == "-" {
        let mut buffer = Vec::new();
        std::io::stdin().read_to_end(&mut buffer)?;
        buffer
    } else {
        fs::read(path)?
    };

    let looks_ascii = raw
        .iter()
        .all(|&b| b == b'0' || b == b'1' || b.is_ascii_whitespace());
    let ascii = match encoding {
        EncodingArg::Ascii => true,
        EncodingArg::Raw => false,
        EncodingArg::Auto => looks_ascii,
    };

    if ascii {
        let mut bits = Bits::new(Vec::new());
        for &b in &raw {
            match b {
                b'0' => bits.push(false),
                b'1' => bits.push(true),
                _ if b.is_ascii_whitespace() => {}
                _ => {
                    return Err(Error::invalid(
                        "sequence",
                        format!("unexpected byte {b:#04x} in 0/1 input"),
                    )
                    .into())
                }
            }
        }
        Ok(bits)
    } else {
        // Raw bytes, most significant bit first.
        let mut bits = Bits::new(Vec::new());
        for &byte in &raw {
            for k in (0..8).rev() {
                bits.push(byte >> k & 1 == 1);
            }
        }
        Ok(bits)
    }
}

fn parse_battery(spec: &str) -> Result<Vec<BatteryTest>, Error> {
    let mut tests = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if token.eq_ignore_ascii_case("fips") {
            tests.extend(BatteryTest::FIPS);
        } else if token.eq_ignore_ascii_case("all") {
            tests.extend(BatteryTest::ALL);
        } else {
            tests.push(token.parse()?);
        }
    }
    if tests.is_empty() {
        return Err(Error::invalid("battery", "no tests selected"));
    }
    Ok(tests)
}
