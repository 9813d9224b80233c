use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use visroute_core::bounds::{verify_lemma5, verify_lemma6, verify_lemmas, Verdict};
use visroute_core::geom::predicates::{in_closed_triangle, segments_cross};
use visroute_core::geom::orient;
use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::router::route;
use visroute_core::triangulation::{build_cdt, build_h_prime, convex_hull, extract_h};
use visroute_core::{Algo, Instance, Outcome, Position, Triangulation, VertexId};

fn random(n: usize, density: f64, seed: u64) -> Arc<Instance> {
    Arc::new(random_instance(&RandomInstanceParams::new(n, density, seed)).unwrap())
}

/// 200 seeded `(instance, s, t)` cases on CDTs of up to 40 points.
fn cases() -> Vec<(Triangulation, VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for i in 0..40u64 {
        let n = rng.gen_range(6..=40);
        let density = [0.0, 0.3, 0.7, 1.0][i as usize % 4];
        let tri = build_cdt(&random(n, density, 1000 + i)).unwrap();
        for _ in 0..5 {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            out.push((tri.clone(), s, t));
        }
    }
    out
}

#[test]
fn path_length_chain_holds_on_random_triangulations() {
    let all = cases();
    assert_eq!(all.len(), 200);
    for (tri, s, t) in &all {
        let c = verify_lemmas(tri, *s, *t).unwrap();
        assert!(c.all_hold(), "{s}->{t} n = {}: {c:?}", tri.instance().n());
        assert!(c.report.pi_h_prime.length <= c.report.pi_g.length + 1e-9);
        assert!(c.report.pi_g.length <= c.report.pi_h.length + 1e-9);
    }
}

#[test]
fn routing_on_h_stays_in_crossed_triangles() {
    for (tri, s, t) in &cases() {
        let inst = tri.instance();
        let tr = route(tri.graph(), Algo::Face1OnH, *s, *t).unwrap();
        assert_eq!(tr.outcome, Outcome::Delivered, "{s}->{t}");
        let h = extract_h(tri, *s, *t);
        for st in &tr.steps {
            let (a, b) = (st.from, st.to);
            let touches = h.crossed_faces.iter().any(|f| f.contains(&a) && f.contains(&b));
            assert!(touches, "{s}->{t}: edge ({a}, {b}) has no crossed incident triangle");
            assert!(h.h.has_edge(a, b));
        }
        let ps = inst.pos(*s);
        let pt = inst.pos(*t);
        for &[a, b, c] in &h.crossed_faces {
            assert!(visroute_core::geom::predicates::segment_meets_triangle(ps, pt, inst.pos(a), inst.pos(b), inst.pos(c)));
        }
    }
}

#[test]
fn edge_st_gives_ratio_one() {
    let tri = build_cdt(&random(15, 0.4, 77)).unwrap();
    let (a, b) = tri.graph().edges().next().unwrap();
    let (ok_h, ok_g, rep) = verify_lemma6(&tri, a, b).unwrap();
    assert_eq!((ok_h, ok_g), (Verdict::Holds, Verdict::Holds));
    assert_eq!(rep.ratio_h_g, 1.0);
    let (ok, _) = verify_lemma5(&tri, a, b).unwrap();
    assert_eq!(ok, Verdict::Holds);
}

fn midpoint(a: &Position, b: &Position) -> Position {
    let two = num_rational::BigRational::from_integer(2.into());
    Position::from_rationals((a.xr() + b.xr()) / &two, (a.yr() + b.yr()) / &two)
}

/// Every added edge of `H'` runs through a pocket: its midpoint lies in the
/// hull of `V(H)` but in no triangle of `H`, and it crosses neither `H`,
/// the hull, nor a constraint with both endpoints in `H`.
#[test]
fn h_prime_edges_stay_inside_pockets() {
    let mut pockets = 0;
    for (tri, s, t) in &cases() {
        let inst = tri.instance();
        let h = extract_h(tri, *s, *t);
        let aug = build_h_prime(&h);
        let verts = h.h.touched_vertices();
        let in_h: BTreeSet<VertexId> = verts.iter().copied().collect();
        let hull = convex_hull(inst, &verts);
        let hull_edges: Vec<(VertexId, VertexId)> = (0..hull.len()).map(|i| (hull[i], hull[(i + 1) % hull.len()])).collect();
        for &(a, b) in &aug.added_hull_edges {
            assert!(hull_edges.iter().any(|&(c, d)| (c.min(d), c.max(d)) == (a, b)));
        }
        for &(a, b) in &aug.added_visibility_edges {
            pockets += 1;
            let m = midpoint(inst.pos(a), inst.pos(b));
            assert!(hull_edges.iter().all(|&(c, d)| !orient(inst.pos(c), inst.pos(d), &m).is_negative()));
            assert!(!h.crossed_faces.iter().any(|f| in_closed_triangle(inst.pos(f[0]), inst.pos(f[1]), inst.pos(f[2]), &m)));
            let blockers = h
                .h
                .edges()
                .chain(hull_edges.iter().copied())
                .chain(inst.constraints().iter().copied().filter(|(c, d)| in_h.contains(c) && in_h.contains(d)));
            for (c, d) in blockers {
                assert!(!segments_cross(inst.pos(a), inst.pos(b), inst.pos(c), inst.pos(d)), "({a}, {b}) crosses ({c}, {d})");
            }
        }
    }
    assert!(pockets > 0, "no case exercised a pocket");
}

/// `H'` may use edges crossing a constraint that leaves `H`; the inequality
/// against the whole triangulation must survive those cases.
#[test]
fn h_prime_edges_crossing_outside_constraints_keep_the_bound() {
    let mut found = 0;
    for i in 0..60u64 {
        let inst = random(24, 0.8, 3000 + i);
        let tri = build_cdt(&inst).unwrap();
        for (s, t) in [(0, 23), (1, 12), (5, 19)] {
            let h = extract_h(&tri, s, t);
            let aug = build_h_prime(&h);
            let in_h: BTreeSet<VertexId> = h.h.touched_vertices().into_iter().collect();
            let illegal = aug.added_visibility_edges.iter().any(|&(a, b)| {
                inst.constraints().iter().any(|&(c, d)| {
                    !(in_h.contains(&c) && in_h.contains(&d)) && segments_cross(inst.pos(a), inst.pos(b), inst.pos(c), inst.pos(d))
                })
            });
            if illegal {
                found += 1;
                let (v, _) = verify_lemma5(&tri, s, t).unwrap();
                assert_eq!(v, Verdict::Holds);
            }
        }
    }
    assert!(found > 0, "search found no edge crossing an outside constraint");
}
