//! Each construction checked against a slow, independently written oracle.

use std::collections::BTreeSet;
use std::sync::Arc;

use visroute_core::bounds::shortest_path;
use visroute_core::cones::build_constrained_theta;
use visroute_core::geom::{incircle, orient, Sign};
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::triangulation::{build_cdt, extract_h};
use visroute_core::vis::build_visibility_graph;
use visroute_core::{GeomGraph, Instance, Position, VertexId};

fn random(n: usize, density: f64, seed: u64) -> Arc<Instance> {
    Arc::new(random_instance(&RandomInstanceParams::new(n, density, seed)).unwrap())
}

fn sign(p: &Position, q: &Position, r: &Position) -> i32 {
    orient(p, q, r).as_i32()
}

/// Proper crossing straight from the orientation definition.
fn crosses(a: &Position, b: &Position, c: &Position, d: &Position) -> bool {
    let (o1, o2) = (sign(a, b, c), sign(a, b, d));
    let (o3, o4) = (sign(c, d, a), sign(c, d, b));
    o1 * o2 < 0 && o3 * o4 < 0
}

fn edge_set(g: &GeomGraph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges().collect()
}

fn brute_visibility(inst: &Instance) -> BTreeSet<(VertexId, VertexId)> {
    let mut out = BTreeSet::new();
    for a in 0..inst.n() {
        for b in a + 1..inst.n() {
            let blocked = inst
                .constraints()
                .iter()
                .any(|&(c, d)| crosses(inst.pos(a), inst.pos(b), inst.pos(c), inst.pos(d)));
            if !blocked {
                out.insert((a, b));
            }
        }
    }
    out
}

#[test]
fn visibility_graph_matches_brute_force() {
    for seed in 0..30 {
        for density in [0.0, 0.5, 1.0] {
            let inst = random(4 + (seed as usize % 9), density, seed);
            let vis = build_visibility_graph(&inst);
            assert_eq!(edge_set(&vis), brute_visibility(&inst), "seed {seed} density {density}");
            for &(a, b) in inst.constraints() {
                assert!(vis.has_edge(a, b));
            }
        }
    }
}

fn exhaustive(g: &GeomGraph, u: VertexId, t: VertexId, seen: &mut Vec<bool>, len: f64, best: &mut f64) {
    if u == t {
        *best = best.min(len);
        return;
    }
    for &v in g.neighbors(u) {
        if !seen[v] {
            seen[v] = true;
            exhaustive(g, v, t, seen, len + g.weight(u, v), best);
            seen[v] = false;
        }
    }
}

#[test]
fn dijkstra_matches_exhaustive_simple_paths() {
    for seed in 0..12 {
        let inst = random(5 + (seed as usize % 5), 0.6, 40 + seed);
        let g = build_visibility_graph(&inst);
        for s in 0..g.n() {
            for t in 0..g.n() {
                let mut seen = vec![false; g.n()];
                seen[s] = true;
                let mut best = f64::INFINITY;
                exhaustive(&g, s, t, &mut seen, 0.0, &mut best);
                match shortest_path(&g, s, t) {
                    Some(p) => {
                        assert!((p.length - best).abs() <= 1e-9 * best.max(1.0), "seed {seed} {s}->{t}");
                        assert_eq!(p.vertices.first(), Some(&s));
                        assert_eq!(p.vertices.last(), Some(&t));
                    }
                    None => assert!(best.is_infinite()),
                }
            }
        }
    }
}

/// Bisector angle of cone `k`: cones are numbered clockwise from the one
/// around the upward vertical.
fn bisector(k: usize) -> f64 {
    (90.0 - 60.0 * k as f64).to_radians()
}

fn cone(u: &Position, v: &Position) -> usize {
    let [ux, uy] = u.approx();
    let [vx, vy] = v.approx();
    let deg = (vy - uy).atan2(vx - ux).to_degrees();
    // cone k spans (60 - 60k, 120 - 60k) degrees
    (((120.0 - deg) / 60.0).floor() as i64).rem_euclid(6) as usize
}

fn projection(u: &Position, v: &Position, k: usize) -> f64 {
    let [ux, uy] = u.approx();
    let [vx, vy] = v.approx();
    (vx - ux) * bisector(k).cos() + (vy - uy) * bisector(k).sin()
}

/// Constrained Theta-6 edges from first principles: `v` competes with every
/// visible vertex in the same cone that no constraint ray of `u` strictly
/// separates from it. When `uv` is itself a constraint, `v` bounds two
/// subcones and wins if it is closest on either side.
fn theta_oracle(inst: &Instance, vis: &GeomGraph) -> (BTreeSet<(VertexId, VertexId)>, usize) {
    let mut out = BTreeSet::new();
    let mut close_calls = 0;
    for u in 0..inst.n() {
        let pu = inst.pos(u);
        let rays = inst.incident_constraints(u);
        for &v in vis.neighbors(u) {
            let pv = inst.pos(v);
            let k = cone(pu, pv);
            let mut sides = [true, true];
            for &w in vis.neighbors(u) {
                let pw = inst.pos(w);
                if w == v || cone(pu, pw) != k {
                    continue;
                }
                let separated = rays.iter().any(|&c| {
                    let pc = inst.pos(c);
                    c != v && c != w && cone(pu, pc) == k && sign(pu, pv, pc) * sign(pu, pc, pw) > 0 && sign(pu, pv, pc) != 0
                });
                if separated {
                    continue;
                }
                let (dv, dw) = (projection(pu, pv, k), projection(pu, pw, k));
                if (dv - dw).abs() < 1e-9 * dv.abs().max(1.0) {
                    close_calls += 1;
                }
                if dw < dv {
                    let side = sign(pu, pv, pw);
                    if rays.contains(&v) {
                        sides[usize::from(side > 0)] = false;
                    } else {
                        sides = [false, false];
                    }
                }
            }
            if sides[0] || sides[1] {
                out.insert((u.min(v), u.max(v)));
            }
        }
    }
    (out, close_calls)
}

#[test]
fn theta_graph_matches_cone_oracle() {
    for seed in 0..20 {
        for density in [0.0, 0.4, 0.8] {
            let inst = random(10 + seed as usize, density, 200 + seed);
            let vis = build_visibility_graph(&inst);
            let theta = build_constrained_theta(&inst, 6).unwrap();
            let (expected, close_calls) = theta_oracle(&inst, &vis);
            assert_eq!(close_calls, 0, "oracle cannot decide seed {seed}");
            assert_eq!(edge_set(&theta), expected, "seed {seed} density {density}");
        }
    }
}

fn centroid(a: &Position, b: &Position, c: &Position) -> Position {
    let three = num_rational::BigRational::from_integer(3.into());
    Position::from_rationals((a.xr() + b.xr() + c.xr()) / &three, (a.yr() + b.yr() + c.yr()) / &three)
}

/// Every vertex strictly inside a triangle's circumcircle must be hidden
/// from the triangle's interior by a constraint.
#[test]
fn cdt_triangles_have_empty_visible_circumcircles() {
    for seed in 0..15 {
        for density in [0.0, 0.3, 0.9] {
            let inst = random(8 + 2 * seed as usize, density, 300 + seed);
            let mut tri = build_cdt(&inst).unwrap();
            for &[a, b, c] in tri.faces() {
                let (pa, pb, pc) = (inst.pos(a), inst.pos(b), inst.pos(c));
                assert_eq!(orient(pa, pb, pc), Sign::Positive);
                let g = centroid(pa, pb, pc);
                for d in 0..inst.n() {
                    if [a, b, c].contains(&d) || !incircle(pa, pb, pc, inst.pos(d)).is_positive() {
                        continue;
                    }
                    let hidden = inst.constraints().iter().any(|&(p, q)| crosses(&g, inst.pos(d), inst.pos(p), inst.pos(q)));
                    assert!(hidden, "seed {seed}: {d} inside circumcircle of {a} {b} {c}");
                }
            }
            for &(p, q) in inst.constraints() {
                assert!(tri.graph().has_edge(p, q));
            }
            assert_eq!(tri.flip_pass(), 0, "seed {seed} density {density}");
        }
    }
}

/// Closed segment and closed triangle are disjoint iff one of the triangle's
/// edge lines or the segment's own line separates them.
fn meets(s: &Position, t: &Position, tri: [&Position; 3]) -> bool {
    for i in 0..3 {
        let (p, q, r) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
        let inner = sign(p, q, r);
        if sign(p, q, s) * inner < 0 && sign(p, q, t) * inner < 0 {
            return false;
        }
    }
    let o: Vec<i32> = tri.iter().map(|p| sign(s, t, p)).collect();
    !(o.iter().all(|&x| x > 0) || o.iter().all(|&x| x < 0))
}

#[test]
fn h_is_exactly_the_triangles_meeting_st() {
    for seed in 0..10 {
        let inst = random(20, 0.5, 400 + seed);
        let tri = build_cdt(&inst).unwrap();
        for (s, t) in [(0, 1), (2, 9), (5, 17), (3, 3)] {
            let h = extract_h(&tri, s, t);
            let got: BTreeSet<[VertexId; 3]> = h.crossed_faces.iter().copied().collect();
            let want: BTreeSet<[VertexId; 3]> = tri
                .faces()
                .iter()
                .copied()
                .filter(|f| meets(inst.pos(s), inst.pos(t), [inst.pos(f[0]), inst.pos(f[1]), inst.pos(f[2])]))
                .collect();
            assert_eq!(got, want, "seed {seed} {s}->{t}");
            let want_edges: BTreeSet<(VertexId, VertexId)> =
                want.iter().flat_map(|&[a, b, c]| [(a.min(b), a.max(b)), (b.min(c), b.max(c)), (a.min(c), a.max(c))]).collect();
            assert_eq!(edge_set(&h.h), want_edges);
        }
    }
}
