use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qapery_core::{sum_series, PrecisionReal, SeriesSpec, SummationOptions};

fn plain_vs_accelerated(c: &mut Criterion) {
    let opts = SummationOptions::default();
    let mut group = c.benchmark_group("sum_series");
    for digits in [20u32, 50] {
        let q = PrecisionReal::parse("0.5", PrecisionReal::working_bits(digits)).unwrap();
        for spec in [SeriesSpec::PlainQZeta { r: 0 }, SeriesSpec::RFamilyRhs { r: 0 }] {
            group.bench_with_input(BenchmarkId::new(spec.name(), digits), &digits, |b, &d| {
                b.iter(|| sum_series(&spec, Some(&q), None, d, &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, plain_vs_accelerated);
criterion_main!(benches);
