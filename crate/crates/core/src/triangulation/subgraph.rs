use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{convex_hull, Edge, Triangulation};
use crate::embedding::{trace_faces, Rotation};
use crate::geom::predicates::{orient_det, segment_meets_triangle, segments_cross};
use crate::geom::{Position, VertexId};
use crate::instance::{GeomGraph, GraphKind};

/// The triangles met by the closed segment `st`, and their edges.
#[derive(Clone, Debug)]
pub struct CrossedSubgraph {
    pub h: GeomGraph,
    /// Ordered along `st` from `s` to `t`.
    pub crossed_faces: Vec<[VertexId; 3]>,
    pub s: VertexId,
    pub t: VertexId,
}

/// `H` plus hull edges plus same-face visibility edges.
#[derive(Clone, Debug)]
pub struct AugmentedSubgraph {
    pub h_prime: GeomGraph,
    pub added_hull_edges: Vec<Edge>,
    pub added_visibility_edges: Vec<Edge>,
}

/// Parameter interval of `st` inside the closed counterclockwise triangle.
fn clip(s: &Position, t: &Position, tri: [&Position; 3]) -> Option<(BigRational, BigRational)> {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    for i in 0..3 {
        let (p, q) = (tri[i], tri[(i + 1) % 3]);
        // orient(p, q, s + l (t - s)) = a + l b must stay >= 0
        let a = orient_det(p, q, s);
        let b = orient_det(p, q, t) - &a;
        if b.is_zero() {
            if a < BigRational::zero() {
                return None;
            }
        } else {
            let l = -a / &b;
            if b > BigRational::zero() {
                lo = lo.max(l);
            } else {
                hi = hi.min(l);
            }
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// All triangles whose closed region meets segment `st`, with their edges.
pub fn extract_h(tri: &Triangulation, s: VertexId, t: VertexId) -> CrossedSubgraph {
    let inst = tri.instance();
    let (ps, pt) = (inst.pos(s), inst.pos(t));
    let mut hit: Vec<((BigRational, BigRational), [VertexId; 3])> = tri
        .faces()
        .iter()
        .filter_map(|&f| {
            let corners = [inst.pos(f[0]), inst.pos(f[1]), inst.pos(f[2])];
            debug_assert_eq!(
                clip(ps, pt, corners).is_some(),
                segment_meets_triangle(ps, pt, corners[0], corners[1], corners[2])
            );
            clip(ps, pt, corners).map(|iv| (iv, f))
        })
        .collect();
    hit.sort();
    let crossed_faces: Vec<[VertexId; 3]> = hit.into_iter().map(|(_, f)| f).collect();
    let edges = crossed_faces.iter().flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)]);
    let h = GeomGraph::from_edges(inst.clone(), GraphKind::H, edges).expect("triangle edges are in range");
    CrossedSubgraph { h, crossed_faces, s, t }
}

/// Adds the convex hull edges of `V(H)`, then within every internal face of
/// the result every pair of boundary vertices whose segment crosses no edge
/// of that plane graph and no constraint with both endpoints in `V(H)`.
pub fn build_h_prime(hsub: &CrossedSubgraph) -> AugmentedSubgraph {
    let h = &hsub.h;
    let inst = h.instance();
    let verts = h.touched_vertices();
    let in_h: BTreeSet<VertexId> = verts.iter().copied().collect();
    let hull = convex_hull(inst, &verts);
    let mut added_hull_edges = Vec::new();
    if hull.len() >= 3 {
        for i in 0..hull.len() {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            if !h.has_edge(a, b) {
                added_hull_edges.push((a.min(b), a.max(b)));
            }
        }
    }
    added_hull_edges.sort_unstable();
    let base = GeomGraph::from_edges(inst.clone(), GraphKind::HPrime, h.edges().chain(added_hull_edges.iter().copied()))
        .expect("edges are in range");
    let blockers: Vec<Edge> = base
        .edges()
        .chain(inst.constraints().iter().copied().filter(|(a, b)| in_h.contains(a) && in_h.contains(b)))
        .collect();
    let p = |v: VertexId| inst.pos(v);
    let rot = Rotation::new(&base);
    let mut added = BTreeSet::new();
    for face in trace_faces(&base, &rot) {
        if !face.is_internal() || face.vertices.len() <= 3 {
            continue;
        }
        let boundary: BTreeSet<VertexId> = face.vertices.iter().copied().collect();
        let boundary: Vec<VertexId> = boundary.into_iter().collect();
        for (i, &a) in boundary.iter().enumerate() {
            for &b in &boundary[i + 1..] {
                if base.has_edge(a, b) || added.contains(&(a, b)) {
                    continue;
                }
                if blockers.iter().all(|&(c, d)| !segments_cross(p(a), p(b), p(c), p(d))) {
                    added.insert((a, b));
                }
            }
        }
    }
    let added_visibility_edges: Vec<Edge> = added.into_iter().collect();
    let h_prime = GeomGraph::from_edges(inst.clone(), GraphKind::HPrime, base.edges().chain(added_visibility_edges.iter().copied()))
        .expect("edges are in range");
    AugmentedSubgraph { h_prime, added_hull_edges, added_visibility_edges }
}
