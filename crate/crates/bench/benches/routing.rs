use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use visroute_bench::{instance, SIZES};
use visroute_core::bounds::{shortest_path, verify_lemmas};
use visroute_core::cones::half_theta6_from_visibility;
use visroute_core::router::route;
use visroute_core::triangulation::build_cdt;
use visroute_core::vis::build_visibility_graph;
use visroute_core::Algo;

fn routing(c: &mut Criterion) {
    let mut group = c.benchmark_group("routing");
    group.sample_size(10);
    for n in SIZES {
        let inst = instance(n);
        let vis = build_visibility_graph(&inst);
        let half = half_theta6_from_visibility(&vis).unwrap();
        let tri = build_cdt(&inst).unwrap();
        let (s, t) = (0, n - 1);
        group.bench_function(BenchmarkId::new("face1_on_vis", n), |b| b.iter(|| route(&vis, Algo::Face1, s, t).unwrap()));
        group.bench_function(BenchmarkId::new("face1_on_half_theta6", n), |b| b.iter(|| route(&half, Algo::Face1, s, t).unwrap()));
        group.bench_function(BenchmarkId::new("face2_on_half_theta6", n), |b| b.iter(|| route(&half, Algo::Face2, s, t).unwrap()));
        group.bench_function(BenchmarkId::new("face1_on_h", n), |b| b.iter(|| route(tri.graph(), Algo::Face1OnH, s, t).unwrap()));
        group.bench_function(BenchmarkId::new("dijkstra_vis", n), |b| b.iter(|| shortest_path(&vis, s, t)));
        group.bench_function(BenchmarkId::new("certified_lemmas", n), |b| b.iter(|| verify_lemmas(&tri, s, t).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, routing);
criterion_main!(benches);
