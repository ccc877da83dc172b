use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mogami_bench::{fold_ball, SIZES};
use std::hint::black_box;

fn signature(c: &mut Criterion) {
    let mut g = c.benchmark_group("signature");
    for n in SIZES {
        let p = fold_ball(n, 7);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(p.signature()))
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    for n in SIZES {
        let p = fold_ball(n, 7);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| {
            b.iter(|| black_box(p.homology().unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, signature, homology);
criterion_main!(benches);
