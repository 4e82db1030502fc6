use std::hint::black_box;

use coremaint::{decompose, Algorithm, DynamicCore, Variant};
use coremaint_bench::{Fixture, SIZES};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn recompute(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(20);
    for n in SIZES {
        let fx = Fixture::new(n, 1, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &fx.graph, |b, g| b.iter(|| decompose(black_box(g))));
    }
    group.finish();
}

fn delete_then_reinsert(c: &mut Criterion) {
    let mut group = c.benchmark_group("delete+insert");
    for n in SIZES {
        let fx = Fixture::new(n, 256, 2);
        for variant in Variant::ALL {
            let mut dc = DynamicCore::new(fx.graph.clone(), Algorithm::Incremental(variant));
            let mut i = 0;
            group.bench_function(BenchmarkId::new(variant.code(), n), |b| {
                b.iter(|| {
                    let (u, v) = fx.edges[i % fx.edges.len()];
                    i += 1;
                    dc.delete_edge(u, v).unwrap();
                    black_box(dc.insert_edge(u, v).unwrap());
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, recompute, delete_then_reinsert);
criterion_main!(benches);
