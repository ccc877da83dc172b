use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mogami_core::matching::{self, CycleGraph, PlanarMatching};
use std::hint::black_box;

fn all(n: usize) -> (CycleGraph, Vec<PlanarMatching>) {
    let c = CycleGraph::new(n).unwrap();
    let ms = matching::all_planar_matchings(n)
        .into_iter()
        .map(|p| PlanarMatching::new(&c, p).unwrap())
        .collect();
    (c, ms)
}

fn orderability(c: &mut Criterion) {
    let mut g = c.benchmark_group("orderable_all_matchings");
    for n in [8, 10, 12] {
        let (cy, ms) = all(n);
        g.bench_with_input(BenchmarkId::new("beta1", n), &ms, |b, ms| {
            b.iter(|| ms.iter().filter(|m| matching::lc_orderable(&cy, m)).count())
        });
        g.bench_with_input(BenchmarkId::new("brute_force", n), &ms, |b, ms| {
            b.iter(|| ms.iter().filter(|m| matching::brute_force_orderable(&cy, m)).count())
        });
    }
    g.finish();
}

fn orders(c: &mut Criterion) {
    let (cy, ms) = all(12);
    let complete: Vec<_> = ms.into_iter().filter(|m| m.is_complete(&cy)).collect();
    c.bench_function("lc_order_last_active/12", |b| {
        b.iter(|| {
            for m in &complete {
                black_box(matching::lc_order_last_active(&cy, m, 0).unwrap());
            }
        })
    });
}

criterion_group!(benches, orderability, orders);
criterion_main!(benches);
