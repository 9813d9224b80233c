//! Rotation systems and face traversal of plane straight-line graphs.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;

use crate::geom::predicates::{cmp_around, polygon_area2};
use crate::geom::{Point, Position, VertexId};
use crate::instance::GeomGraph;

/// Sorts points counterclockwise around `center`, starting from +x.
pub fn sort_ccw(center: &Position, pts: &mut [&Point]) {
    pts.sort_by(|a, b| cmp_around(center, &a.pos, &b.pos).then(a.id.cmp(&b.id)));
}

/// In a counterclockwise list, the entry just clockwise of `from`.
pub fn cw_next_in<'a>(ccw: &[&'a Point], from: VertexId) -> Option<&'a Point> {
    let i = ccw.iter().position(|p| p.id == from)?;
    Some(ccw[(i + ccw.len() - 1) % ccw.len()])
}

/// In a counterclockwise list, the entry just counterclockwise of `from`.
pub fn ccw_next_in<'a>(ccw: &[&'a Point], from: VertexId) -> Option<&'a Point> {
    let i = ccw.iter().position(|p| p.id == from)?;
    Some(ccw[(i + 1) % ccw.len()])
}

/// The first entry met when sweeping clockwise from the direction of
/// `target` (which must not coincide with any entry's direction).
pub fn cw_first_from<'a>(center: &Position, ccw: &[&'a Point], target: &Position) -> Option<&'a Point> {
    if ccw.is_empty() {
        return None;
    }
    // first index whose direction is strictly after the target, ccw
    let after = ccw.partition_point(|p| cmp_around(center, &p.pos, target) != Ordering::Greater);
    Some(ccw[(after + ccw.len() - 1) % ccw.len()])
}

/// Counterclockwise neighbour order of every vertex.
#[derive(Clone, Debug)]
pub struct Rotation {
    order: Vec<Vec<VertexId>>,
    slot: Vec<HashMap<VertexId, usize>>,
}

impl Rotation {
    pub fn new(g: &GeomGraph) -> Self {
        let inst = g.instance();
        let mut order = Vec::with_capacity(g.n());
        let mut slot = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let mut pts: Vec<&Point> = g.neighbors(v).iter().map(|&w| inst.point(w)).collect();
            sort_ccw(inst.pos(v), &mut pts);
            let ids: Vec<VertexId> = pts.iter().map(|p| p.id).collect();
            slot.push(ids.iter().enumerate().map(|(i, &w)| (w, i)).collect());
            order.push(ids);
        }
        Rotation { order, slot }
    }

    pub fn ccw(&self, v: VertexId) -> &[VertexId] {
        &self.order[v]
    }

    /// Neighbour of `v` immediately clockwise of `from`.
    pub fn cw_next(&self, v: VertexId, from: VertexId) -> VertexId {
        let i = self.slot[v][&from];
        let d = self.order[v].len();
        self.order[v][(i + d - 1) % d]
    }

    /// Neighbour of `v` immediately counterclockwise of `from`.
    pub fn ccw_next(&self, v: VertexId, from: VertexId) -> VertexId {
        let i = self.slot[v][&from];
        let d = self.order[v].len();
        self.order[v][(i + 1) % d]
    }
}

/// A face boundary walk with the face on the left of every step.
#[derive(Clone, Debug)]
pub struct Face {
    pub vertices: Vec<VertexId>,
    /// Twice the signed area: positive for bounded faces of a connected
    /// plane graph, negative for the outer face.
    pub area2: BigRational,
}

impl Face {
    pub fn is_internal(&self) -> bool {
        self.area2 > BigRational::from_integer(0.into())
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

/// Traces every face of a plane graph. Each directed edge is used once.
pub fn trace_faces(g: &GeomGraph, rot: &Rotation) -> Vec<Face> {
    let inst = g.instance();
    let mut seen: std::collections::HashSet<(VertexId, VertexId)> = Default::default();
    let mut faces = Vec::new();
    for u in 0..g.n() {
        for &v in rot.ccw(u) {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                walk.push(a);
                let c = rot.cw_next(b, a);
                a = b;
                b = c;
            }
            let area2 = polygon_area2(walk.iter().map(|&w| inst.pos(w)));
            faces.push(Face { vertices: walk, area2 });
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{GraphKind, Instance};
    use std::sync::Arc;

    #[test]
    fn square_with_diagonal_has_three_faces() {
        let pts = vec![
            Point::from_ints(0, 0, 0),
            Point::from_ints(1, 10, 1),
            Point::from_ints(2, 11, 12),
            Point::from_ints(3, -1, 9),
        ];
        let inst = Arc::new(Instance::new(pts, vec![]).unwrap());
        let g = GeomGraph::from_edges(inst, GraphKind::Triangulation, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
            .unwrap();
        let rot = Rotation::new(&g);
        let faces = trace_faces(&g, &rot);
        assert_eq!(faces.len(), 3);
        assert_eq!(faces.iter().filter(|f| f.is_internal()).count(), 2);
        let outer = faces.iter().find(|f| !f.is_internal()).unwrap();
        assert_eq!(outer.vertices.len(), 4);
    }

    #[test]
    fn clockwise_sweep_from_direction() {
        let c = Point::from_ints(9, 0, 0);
        let e = Point::from_ints(0, 5, 1);
        let n = Point::from_ints(1, -1, 5);
        let w = Point::from_ints(2, -5, -1);
        let mut pts = vec![&w, &n, &e];
        sort_ccw(&c.pos, &mut pts);
        assert_eq!(pts.iter().map(|p| p.id).collect::<Vec<_>>(), vec![0, 1, 2]);
        // direction up-right lies between e and n; clockwise from it is e
        assert_eq!(cw_first_from(&c.pos, &pts, &Position::from_ints(1, 5)).unwrap().id, 0);
        // direction straight down: clockwise from it is w
        assert_eq!(cw_first_from(&c.pos, &pts, &Position::from_ints(0, -5)).unwrap().id, 2);
        assert_eq!(cw_next_in(&pts, 0).unwrap().id, 2);
        assert_eq!(ccw_next_in(&pts, 2).unwrap().id, 0);
    }
}
