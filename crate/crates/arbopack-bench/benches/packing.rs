use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use arbopack::gallery::make_example;
use arbopack::walk::DEFAULT_ENUM_GUARD;
use arbopack::{lift_chain, min_root_connectivity, pack_arborescences};
use arbopack_bench::{dense_graph, root};

fn bench_pack(c: &mut Criterion) {
    let mut group = c.benchmark_group("pack_arborescences");
    for n in [8usize, 16, 24] {
        let g = dense_graph(n, 42);
        group.bench_with_input(BenchmarkId::new("k2", n), &g, |b, g| {
            b.iter(|| pack_arborescences(g, &root(), 2).unwrap())
        });
    }
    group.finish();
}

fn bench_connectivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_root_connectivity");
    for n in [8usize, 16, 32] {
        let g = dense_graph(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| min_root_connectivity(g, &root()).unwrap())
        });
    }
    group.finish();
}

fn bench_lift(c: &mut Criterion) {
    let mut group = c.benchmark_group("lift_chain");
    let forward = make_example("forward_ray").unwrap();
    let grid = make_example("grid:2").unwrap();
    for depth in [8usize, 16] {
        group.bench_with_input(
            BenchmarkId::new("forward_ray_k1", depth),
            &depth,
            |b, &d| {
                b.iter(|| {
                    lift_chain(
                        &forward.spec,
                        &forward.expected.root,
                        1,
                        d,
                        DEFAULT_ENUM_GUARD,
                    )
                    .unwrap()
                })
            },
        );
        group.bench_with_input(BenchmarkId::new("grid2_k2", depth), &depth, |b, &d| {
            b.iter(|| {
                lift_chain(&grid.spec, &grid.expected.root, 2, d, DEFAULT_ENUM_GUARD).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_contract(c: &mut Criterion) {
    let entry = make_example("forced_circle").unwrap();
    c.bench_function("contract_at_depth_32", |b| {
        b.iter(|| entry.spec.contract_at_depth(32).unwrap())
    });
}

criterion_group!(
    benches,
    bench_pack,
    bench_connectivity,
    bench_lift,
    bench_contract
);
criterion_main!(benches);
