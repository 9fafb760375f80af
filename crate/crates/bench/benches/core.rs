use std::hint::black_box;

use betanum::confluent::{confluent_base, ConfluentParams};
use betanum::integersets::{enumerate_z_beta, enumerate_z_minus_beta};
use betanum::spectrum::{normalize_confluent, theorem1_report, x_minus_beta_window, ReportSettings};
use betanum::{Base, Digit};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn base(d: usize, m: Digit, n: Digit) -> Base {
    confluent_base(ConfluentParams::new(d, m, n).unwrap()).unwrap()
}

fn expansions(c: &mut Criterion) {
    let mut g = c.benchmark_group("expand");
    for (d, m, n) in [(2, 1, 1), (3, 1, 1), (4, 1, 1), (3, 2, 1)] {
        let b = base(d, m, n);
        let x = b.field().from_int(7).checked_div(&b.field().from_int(3)).unwrap();
        g.bench_with_input(BenchmarkId::new("pos", format!("{d},{m},{n}")), &x, |bench, x| {
            bench.iter(|| b.expand_real_pos(black_box(x), 256).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("neg", format!("{d},{m},{n}")), &x, |bench, x| {
            bench.iter(|| b.expand_real_neg(black_box(x), 256).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("integers");
    let b = base(3, 1, 1);
    for r in [10i64, 50] {
        let lo = b.field().from_int(-r);
        let hi = b.field().from_int(r);
        g.bench_function(BenchmarkId::new("z_minus_beta", r), |bench| {
            bench.iter(|| enumerate_z_minus_beta(&b, &lo, &hi).unwrap())
        });
        g.bench_function(BenchmarkId::new("z_beta", r), |bench| {
            bench.iter(|| enumerate_z_beta(&b, &hi).unwrap())
        });
    }
    g.finish();
}

fn spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    for (d, m, n) in [(3, 1, 1), (2, 2, 1), (4, 3, 1)] {
        let b = base(d, m, n);
        let lo = b.field().from_int(-20);
        let hi = b.field().from_int(20);
        g.bench_function(BenchmarkId::new("x_minus_beta", format!("{d},{m},{n}")), |bench| {
            bench.iter(|| x_minus_beta_window(&b, &lo, &hi).unwrap())
        });
    }
    let word: Vec<_> = std::iter::repeat([0, 1, 1, 1]).take(16).flatten().collect();
    g.bench_function("normalize", |bench| {
        bench.iter(|| normalize_confluent(3, 1, 1, black_box(&word)).unwrap())
    });
    g.finish();
}

fn report(c: &mut Criterion) {
    let mut g = c.benchmark_group("report");
    g.sample_size(20);
    let settings = ReportSettings::default();
    for (d, m, n) in [(3, 1, 1), (2, 2, 1), (5, 2, 2)] {
        let b = base(d, m, n);
        g.bench_function(format!("{d},{m},{n}"), |bench| {
            bench.iter(|| theorem1_report(&b, &settings).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, expansions, enumeration, spectrum, report);
criterion_main!(benches);
