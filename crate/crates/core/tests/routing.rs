use std::collections::BTreeSet;
use std::sync::Arc;

use visroute_core::cones::{build_constrained_half_theta6, build_constrained_theta, half_theta6_from_visibility};
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::router::{local_half_theta6_edges, route, run_router, Algo, EngineOptions, FaceRouter, FaceVariant, LocalRouter, LocalView, Memory, Outcome, PlaneFilter, StepDecision};
use visroute_core::vis::{build_visibility_graph, neighborhood};
use visroute_core::fixtures::theta_trap;
use visroute_core::{GeomGraph, Instance, Result};

fn random(n: usize, density: f64, seed: u64) -> Arc<Instance> {
    Arc::new(random_instance(&RandomInstanceParams::new(n, density, seed)).unwrap())
}

#[test]
fn local_identification_matches_global_graph() {
    let mut mismatches = Vec::new();
    for seed in 0..6 {
        for density in [0.0, 0.3, 0.7] {
            let inst = random(10 + 5 * seed as usize, density, seed);
            let vis = build_visibility_graph(&inst);
            let half = half_theta6_from_visibility(&vis).unwrap();
            for u in 0..inst.n() {
                let local = local_half_theta6_edges(&neighborhood(&vis, u)).unwrap();
                if local != half.neighbors(u) {
                    mismatches.push((seed, density, u, local, half.neighbors(u).to_vec()));
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

fn connected(g: &GeomGraph) -> bool {
    (1..g.n()).all(|t| visroute_core::bounds::shortest_path(g, 0, t).is_some())
}

#[test]
fn face_routing_delivers_on_visibility_graphs() {
    for seed in 0..4 {
        let inst = random(14, 0.5, 100 + seed);
        let vis = build_visibility_graph(&inst);
        if !connected(&vis) {
            continue;
        }
        let half = half_theta6_from_visibility(&vis).unwrap();
        for algo in [Algo::Face1, Algo::Face2] {
            for s in 0..inst.n() {
                for t in 0..inst.n() {
                    let tr = route(&vis, algo, s, t).unwrap_or_else(|e| panic!("{algo} {s}->{t} seed {seed}: {e}"));
                    assert_eq!(tr.outcome, Outcome::Delivered, "{algo} {s}->{t} seed {seed}");
                    for st in &tr.steps {
                        assert!(half.has_edge(st.from, st.to), "{algo} left the half-Theta-6 graph");
                    }
                }
            }
        }
    }
}

#[test]
fn theta_routing_gets_stuck_where_face_routing_delivers() {
    let inst = theta_trap();
    let theta = build_constrained_theta(&inst, 6).unwrap();
    let tr = route(&theta, Algo::Theta, 0, 3).unwrap();
    assert_eq!(tr.outcome, Outcome::Stuck);
    let vis = build_visibility_graph(&inst);
    let tr = route(&vis, Algo::Face1, 0, 3).unwrap();
    assert_eq!(tr.outcome, Outcome::Delivered);
    let half = build_constrained_half_theta6(&inst).unwrap();
    assert_eq!(route(&half, Algo::Face1, 0, 3).unwrap().outcome, Outcome::Delivered);
}

/// Wraps a router and checks that every view it is shown is exactly the
/// 1-neighbourhood of the current vertex.
struct Audited<'g> {
    inner: Box<dyn LocalRouter>,
    graph: &'g GeomGraph,
    views: usize,
}

impl LocalRouter for Audited<'_> {
    fn name(&self) -> &str {
        self.inner.name()
    }
    fn memory_budget(&self) -> usize {
        self.inner.memory_budget()
    }
    fn step(&mut self, view: &LocalView<'_>, memory: &mut Memory) -> Result<StepDecision> {
        let u = view.u().id;
        let expect: BTreeSet<usize> = self.graph.neighbors(u).iter().copied().collect();
        let seen: BTreeSet<usize> = view.nbhd.neighbor_ids().into_iter().collect();
        assert_eq!(seen, expect);
        self.views += 1;
        self.inner.step(view, memory)
    }
}

#[test]
fn routers_only_see_the_current_neighbourhood() {
    let inst = random(16, 0.3, 9);
    let vis = build_visibility_graph(&inst);
    let mut audited = Audited { inner: Box::new(FaceRouter::new(FaceVariant::Face1, PlaneFilter::LocalHalfTheta6)), graph: &vis, views: 0 };
    let tr = run_router(&vis, 0, 15, &mut audited, &EngineOptions::default()).unwrap();
    assert_eq!(audited.views, tr.steps.len());
}
