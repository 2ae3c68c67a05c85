use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hca_core::bits::Bits;
use hca_core::boolfunc::{ExponentFamily, TraceMonomial};
use hca_core::ca::{Boundary, Configuration, Rule};
use hca_core::eval::{battery, scan_elementary_rules, walsh_spectrum, BatteryTest, BooleanFunction};
use hca_core::gf2::{berlekamp_massey, default_primitive, irreducibles_of_degree};
use hca_core::lfsr::{cycle_structure, LfsrForm, LfsrMachine};
use hca_core::lhca::{synthesize, RuleVector};
use hca_core::{FieldElement, Gf2Poly};

fn rule30_stream(bits: usize) -> Bits {
    let config = Configuration::new(Bits::impulse(64, 0).unwrap(), Boundary::Cyclic).unwrap();
    config.cell_sequence(Rule::new(30), 0, bits - 1).unwrap()
}

fn bench_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    for degree in [8usize, 12, 16] {
        let polys = irreducibles_of_degree(degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &polys, |b, polys| {
            b.iter(|| {
                for p in polys {
                    black_box(synthesize(p).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_char_poly(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for cells in [16usize, 64, 256] {
        let d: Bits = (0..cells).map(|i| i % 3 == 0).collect();
        let vector = RuleVector::new(d).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(cells), &vector, |b, v| {
            b.iter(|| black_box(v.char_poly()))
        });
    }
    group.finish();
}

fn bench_walsh(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh_spectrum");
    for arity in [8usize, 12, 16] {
        let table: Bits = (0..1usize << arity).map(|i| (i * 2654435761) % 7 < 3).collect();
        let f = BooleanFunction::new(arity, table).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(arity), &f, |b, f| {
            b.iter(|| black_box(walsh_spectrum(f).unwrap()))
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    c.bench_function("scan_elementary_rules", |b| b.iter(|| black_box(scan_elementary_rules())));
}

fn bench_rule30(c: &mut Criterion) {
    c.bench_function("rule30_stream_20k", |b| b.iter(|| black_box(rule30_stream(20_000))));
}

fn bench_battery(c: &mut Criterion) {
    let stream = rule30_stream(20_000);
    c.bench_function("fips_battery_20k", |b| {
        b.iter(|| black_box(battery(&stream, &BatteryTest::FIPS)))
    });
}

fn bench_berlekamp_massey(c: &mut Criterion) {
    let p = default_primitive(12).unwrap();
    let machine = LfsrMachine::new(p, Bits::impulse(12, 0).unwrap(), LfsrForm::Fibonacci).unwrap();
    let stream = machine.sequence(4_096);
    c.bench_function("berlekamp_massey_4k", |b| {
        b.iter(|| black_box(berlekamp_massey(&stream)))
    });
}

fn bench_cycles(c: &mut Criterion) {
    let p = default_primitive(16).unwrap();
    let machine = LfsrMachine::new(p, Bits::zeros(16), LfsrForm::Galois).unwrap();
    c.bench_function("cycle_structure_deg16", |b| {
        b.iter(|| black_box(cycle_structure(&machine).unwrap()))
    });
}

fn bench_power_sequence(c: &mut Criterion) {
    let modulus = default_primitive(16).unwrap();
    let s = ExponentFamily::Gold { n: 16, i: 3 }.exponent().unwrap();
    let one = FieldElement::new(Gf2Poly::one(), modulus).unwrap();
    let f = TraceMonomial::new(one.clone(), one, s).unwrap();
    c.bench_function("power_sequence_4k", |b| {
        b.iter(|| black_box(f.power_sequence(4_096).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_synthesis,
    bench_char_poly,
    bench_walsh,
    bench_scan,
    bench_rule30,
    bench_battery,
    bench_berlekamp_massey,
    bench_cycles,
    bench_power_sequence
);
criterion_main!(benches);
