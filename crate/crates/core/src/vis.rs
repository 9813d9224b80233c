//! The constrained visibility graph and the per-vertex information packet.

use std::sync::Arc;

use crate::geom::{Point, VertexId};
use crate::instance::{GeomGraph, GraphKind, Instance};

/// True iff `u` and `v` see each other: `uv` is a constraint or crosses none.
pub fn visible(inst: &Instance, u: VertexId, v: VertexId) -> bool {
    debug_assert_ne!(u, v);
    inst.is_constraint(u, v) || !inst.blocked(u, v)
}

/// `Vis(P, S)` by testing every pair against every constraint.
pub fn build_visibility_graph(inst: &Arc<Instance>) -> GeomGraph {
    let n = inst.n();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| visible(inst, u, v));
    GeomGraph::from_edges(inst.clone(), GraphKind::Visibility, edges).expect("ids in range")
}

/// Everything a 1-local router may know about a vertex: its own position,
/// its neighbours in the routed graph and the constraints incident on it.
#[derive(Clone, Debug)]
pub struct Neighborhood<'a> {
    pub center: &'a Point,
    /// Neighbours in ascending id order.
    pub neighbors: Vec<&'a Point>,
    /// Other endpoints of the constraints incident on `center`.
    pub constraint_ends: Vec<&'a Point>,
}

impl<'a> Neighborhood<'a> {
    pub fn contains(&self, v: VertexId) -> bool {
        self.neighbors.binary_search_by_key(&v, |p| p.id).is_ok()
    }

    pub fn get(&self, v: VertexId) -> Option<&'a Point> {
        self.neighbors
            .binary_search_by_key(&v, |p| p.id)
            .ok()
            .map(|i| self.neighbors[i])
    }

    pub fn neighbor_ids(&self) -> Vec<VertexId> {
        self.neighbors.iter().map(|p| p.id).collect()
    }
}

/// `N_1(u)` in `g` plus the constraints incident on `u`.
pub fn neighborhood(g: &GeomGraph, u: VertexId) -> Neighborhood<'_> {
    let inst = g.instance();
    Neighborhood {
        center: inst.point(u),
        neighbors: g.neighbors(u).iter().map(|&v| inst.point(v)).collect(),
        constraint_ends: inst.incident_constraints(u).iter().map(|&v| inst.point(v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn no_constraints_gives_complete_graph() {
        let pts = vec![
            Point::from_ints(0, 0, 0),
            Point::from_ints(1, 5, 1),
            Point::from_ints(2, 2, 7),
            Point::from_ints(3, -3, 4),
        ];
        let inst = Arc::new(Instance::new(pts, vec![]).unwrap());
        assert_eq!(build_visibility_graph(&inst).edge_count(), 6);
    }

    #[test]
    fn single_blocked_pair() {
        // constraint 1-3 separates 0 from 2
        let pts = vec![
            Point::from_ints(0, 0, 0),
            Point::from_ints(1, 5, -2),
            Point::from_ints(2, 7, 5),
            Point::from_ints(3, -1, 6),
        ];
        let inst = Arc::new(Instance::new(pts, vec![(1, 3)]).unwrap());
        let g = build_visibility_graph(&inst);
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(0, 2));
        assert!(g.has_edge(1, 3));
        let nb = neighborhood(&g, 1);
        assert_eq!(nb.neighbor_ids(), vec![0, 2, 3]);
        assert_eq!(nb.constraint_ends.len(), 1);
    }
}
