use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use visroute_bench::{instance, SIZES};
use visroute_core::cones::{build_constrained_theta, half_theta6_from_visibility};
use visroute_core::triangulation::build_cdt;
use visroute_core::vis::build_visibility_graph;

fn graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.sample_size(10);
    for n in SIZES {
        let inst = instance(n);
        let vis = build_visibility_graph(&inst);
        group.bench_with_input(BenchmarkId::new("visibility", n), &inst, |b, inst| b.iter(|| build_visibility_graph(inst)));
        group.bench_with_input(BenchmarkId::new("half_theta6", n), &vis, |b, vis| b.iter(|| half_theta6_from_visibility(vis).unwrap()));
        group.bench_with_input(BenchmarkId::new("theta6", n), &inst, |b, inst| b.iter(|| build_constrained_theta(inst, 6).unwrap()));
        group.bench_with_input(BenchmarkId::new("cdt", n), &inst, |b, inst| b.iter(|| build_cdt(inst).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, graphs);
criterion_main!(benches);
