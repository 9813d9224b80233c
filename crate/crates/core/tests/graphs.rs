use std::sync::Arc;

use visroute_core::bounds::{measure_routing_ratio, spanning_ratio, PairSelection};
use visroute_core::cones::{build_constrained_half_theta6, half_theta6_from_visibility};
use visroute_core::fixtures::{spiral, subcone_example};
use visroute_core::geom::properly_intersects;
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::vis::build_visibility_graph;
use visroute_core::{Algo, GeomGraph, Instance, Segment};

fn random(n: usize, density: f64, seed: u64) -> Arc<Instance> {
    Arc::new(random_instance(&RandomInstanceParams::new(n, density, seed)).unwrap())
}

fn crossing_pairs(g: &GeomGraph) -> Vec<((usize, usize), (usize, usize))> {
    let inst = g.instance();
    let seg = |(a, b): (usize, usize)| Segment::new(inst.point(a).clone(), inst.point(b).clone()).unwrap();
    let edges: Vec<_> = g.edges().collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if properly_intersects(&seg(e), &seg(f)) {
                out.push((e, f));
            }
        }
    }
    out
}

#[test]
fn half_theta6_is_plane_and_a_two_spanner() {
    for seed in 0..24u64 {
        let density = [0.0, 0.3, 0.7][seed as usize % 3];
        let inst = random(10 + seed as usize, density, 500 + seed);
        let vis = build_visibility_graph(&inst);
        let half = half_theta6_from_visibility(&vis).unwrap();
        assert!(crossing_pairs(&half).is_empty(), "seed {seed}");
        assert!(half.is_subgraph_of(&vis));
        let rep = spanning_ratio(&half, &vis);
        assert_eq!(rep.disconnected_pairs, 0, "seed {seed}");
        assert!(rep.max_ratio <= 2.0 + 1e-9, "seed {seed}: {rep:?}");
    }
}

#[test]
fn constraint_splits_a_cone_into_two_subcones() {
    let inst = subcone_example();
    let half = build_constrained_half_theta6(&inst).unwrap();
    let vis = build_visibility_graph(&inst);
    assert!(!vis.has_edge(0, 3));
    assert!(half.has_edge(0, 1));
    assert!(half.has_edge(0, 2));
    assert!(!half.has_edge(0, 3));
}

#[test]
fn face_routing_ratio_grows_on_spirals() {
    let mut last = 0.0;
    for k in [8, 16, 32] {
        let inst = spiral(k).unwrap();
        let half = build_constrained_half_theta6(&inst).unwrap();
        let stats = measure_routing_ratio(&half, Algo::Face1, &PairSelection::All);
        assert_eq!(stats.undelivered, 0);
        assert!(stats.max > last, "k = {k}: {} after {last}", stats.max);
        last = stats.max;
    }
}

#[test]
fn single_edge_has_ratio_one() {
    let inst = random(2, 0.0, 1);
    let vis = build_visibility_graph(&inst);
    let stats = measure_routing_ratio(&vis, Algo::Face1, &PairSelection::All);
    assert_eq!(stats.pairs, 2);
    assert_eq!(stats.max, 1.0);
}
