use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mogami_bench::{fold_ball, SIZES};
use mogami_core::census::{enumerate_balls_no_interior, CensusMode};
use mogami_core::fixtures;
use mogami_core::reduction::{classify_ball, reduce_to_nuclei};
use std::hint::black_box;

fn reduce(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduce_to_nuclei");
    for n in SIZES {
        let p = fold_ball(n, 11);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(reduce_to_nuclei(p)))
        });
    }
    g.finish();
    let f4 = fixtures::figure4_annulus_cone().complex;
    c.bench_function("classify/figure4_annulus_cone", |b| {
        b.iter(|| black_box(classify_ball(&f4)))
    });
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census_free");
    g.sample_size(10);
    for n in [4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(enumerate_balls_no_interior(n, CensusMode::Free)))
        });
    }
    g.finish();
}

criterion_group!(benches, reduce, census);
criterion_main!(benches);
