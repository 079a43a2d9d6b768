use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nfbertrand::analytics::fit_envelope;
use nfbertrand::{build_table, NumberField};

fn table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_table");
    group.sample_size(10);
    let gi = NumberField::quadratic(-4).unwrap();
    for limit in [100_000u64, 1_000_000] {
        group.bench_with_input(BenchmarkId::new("Q(i)", limit), &limit, |b, &x| {
            b.iter(|| build_table(black_box(&gi), x).unwrap())
        });
    }
    let cubic = NumberField {
        label: "Q(cbrt(2))".into(),
        degree: 3,
        discriminant: -108,
        r1: 1,
        r2: 1,
        class_number: 1,
        regulator: (1.0 + 2f64.cbrt() + 4f64.cbrt()).ln(),
        roots_of_unity: 2,
        polynomial: Some(vec![-2, 0, 0, 1]),
        splitting: Default::default(),
    };
    group.bench_function("Q(cbrt(2))/100000", |b| b.iter(|| build_table(black_box(&cubic), 100_000).unwrap()));
    group.finish();
}

fn envelope(c: &mut Criterion) {
    let gi = NumberField::quadratic(-4).unwrap();
    let table = build_table(&gi, 1_000_000).unwrap();
    c.bench_function("fit_envelope Q(i) 1e6", |b| b.iter(|| fit_envelope(black_box(&table), &gi, None).unwrap()));
}

criterion_group!(benches, table_build, envelope);
criterion_main!(benches);
