use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qapery_core::{build_finite_form, IntPoly};
use std::hint::black_box;

/// (1 - q^a)(1 - q^(a+1))...(1 - q^b)
fn cyclotomic_run(a: usize, b: usize) -> IntPoly {
    (a..=b).fold(IntPoly::one(), |acc, e| {
        let mut cs = vec![0i64; e + 1];
        cs[0] = 1;
        cs[e] = -1;
        acc.mul(&IntPoly::from_i64s(&cs))
    })
}

fn gcd_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("gcd");
    for n in [10usize, 20, 30] {
        let a = cyclotomic_run(1, n).mul(&IntPoly::from_i64s(&[3, 1, 2]));
        let b = cyclotomic_run(n / 2, n + n / 2).mul(&IntPoly::from_i64s(&[1, -5]));
        group.bench_with_input(BenchmarkId::new("modular", n), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| black_box(a.gcd(b)))
        });
        group.bench_with_input(BenchmarkId::new("prs", n), &(&a, &b), |bch, (a, b)| {
            bch.iter(|| black_box(a.gcd_primitive_prs(b)))
        });
    }
    group.finish();
}

fn finite_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_finite_form");
    group.sample_size(10);
    for (n, r) in [(4u64, 1u32), (6, 2), (8, 2)] {
        group.bench_function(format!("N={n},r={r}"), |b| b.iter(|| build_finite_form(black_box(n), r).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, gcd_routes, finite_form);
criterion_main!(benches);
