use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::predicates::{orient, segments_cross};
use crate::geom::{incircle, VertexId};
use crate::instance::Instance;

type Edge = (VertexId, VertexId);

fn canon(a: VertexId, b: VertexId) -> Edge {
    (a.min(b), a.max(b))
}

/// Mutable triangle mesh: every directed edge maps to the apex of the
/// counterclockwise triangle on its left.
#[derive(Clone, Debug)]
pub(crate) struct Mesh {
    inst: Arc<Instance>,
    left: BTreeMap<Edge, VertexId>,
    fixed: BTreeSet<Edge>,
}

impl Mesh {
    /// Builds a mesh from counterclockwise triangles.
    pub(crate) fn from_triangles(inst: Arc<Instance>, tris: &[[VertexId; 3]], fixed: BTreeSet<Edge>) -> Self {
        let mut m = Mesh { inst, left: BTreeMap::new(), fixed };
        for &[a, b, c] in tris {
            m.add_tri(a, b, c);
        }
        m
    }

    /// Sweep triangulation of the point set (no constraints), `n >= 3`.
    pub(crate) fn sweep(inst: Arc<Instance>) -> Self {
        let pts = inst.points();
        let mut order: Vec<VertexId> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a].pos.xr().cmp(pts[b].pos.xr()).then_with(|| pts[a].pos.yr().cmp(pts[b].pos.yr())));
        let mut m = Mesh { inst: inst.clone(), left: BTreeMap::new(), fixed: BTreeSet::new() };
        let (a, b, c) = (order[0], order[1], order[2]);
        let mut hull = if orient(&pts[a].pos, &pts[b].pos, &pts[c].pos).is_positive() {
            vec![a, b, c]
        } else {
            vec![a, c, b]
        };
        m.add_tri(hull[0], hull[1], hull[2]);
        for &p in &order[3..] {
            let h = hull.len();
            let visible: Vec<bool> = (0..h)
                .map(|i| orient(&pts[hull[i]].pos, &pts[hull[(i + 1) % h]].pos, &pts[p].pos).is_negative())
                .collect();
            let start = (0..h)
                .find(|&i| visible[i] && !visible[(i + h - 1) % h])
                .expect("a point right of all others sees the hull");
            hull.rotate_left(start);
            let k = visible.iter().filter(|&&v| v).count();
            for i in 0..k {
                m.add_tri(hull[i + 1], hull[i], p);
            }
            hull.splice(1..k, [p]);
        }
        m
    }

    fn add_tri(&mut self, a: VertexId, b: VertexId, c: VertexId) {
        self.left.insert((a, b), c);
        self.left.insert((b, c), a);
        self.left.insert((c, a), b);
    }

    fn remove_tri(&mut self, a: VertexId, b: VertexId, c: VertexId) {
        self.left.remove(&(a, b));
        self.left.remove(&(b, c));
        self.left.remove(&(c, a));
    }

    pub(crate) fn fixed(&self) -> &BTreeSet<Edge> {
        &self.fixed
    }

    pub(crate) fn edges(&self) -> BTreeSet<Edge> {
        self.left.keys().map(|&(a, b)| canon(a, b)).collect()
    }

    /// Counterclockwise triangles, each listed once starting at its smallest id.
    pub(crate) fn triangles(&self) -> Vec<[VertexId; 3]> {
        self.left
            .iter()
            .filter(|(&(a, b), &c)| a < b && a < c)
            .map(|(&(a, b), &c)| [a, b, c])
            .collect()
    }

    fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.left.contains_key(&(a, b)) || self.left.contains_key(&(b, a))
    }

    /// Apexes `(c, d)` of the triangles left and right of `a -> b`, if both exist.
    fn quad(&self, a: VertexId, b: VertexId) -> Option<(VertexId, VertexId)> {
        Some((*self.left.get(&(a, b))?, *self.left.get(&(b, a))?))
    }

    /// An internal, unconstrained edge whose quadrilateral is strictly convex.
    pub(crate) fn is_flippable(&self, a: VertexId, b: VertexId) -> bool {
        if self.fixed.contains(&canon(a, b)) {
            return false;
        }
        let Some((c, d)) = self.quad(a, b) else {
            return false;
        };
        let p = |v| self.inst.pos(v);
        segments_cross(p(a), p(b), p(c), p(d))
    }

    pub(crate) fn flippable_edges(&self) -> Vec<Edge> {
        self.edges().into_iter().filter(|&(a, b)| self.is_flippable(a, b)).collect()
    }

    /// Replaces diagonal `ab` by the other diagonal; returns it.
    pub(crate) fn flip(&mut self, a: VertexId, b: VertexId) -> Edge {
        let (c, d) = self.quad(a, b).expect("flip of an internal edge");
        self.remove_tri(a, b, c);
        self.remove_tri(b, a, d);
        self.add_tri(a, d, c);
        self.add_tri(d, b, c);
        (c, d)
    }

    /// Forces the constraint `ab` into the mesh by flipping away every
    /// edge that crosses it, then pins it.
    pub(crate) fn insert_constraint(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        let inst = self.inst.clone();
        let p = |v| inst.pos(v);
        let mut queue: VecDeque<Edge> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| segments_cross(p(a), p(b), p(u), p(v)))
            .collect();
        // each pass over the queue flips at least one edge while it is non-empty
        let mut idle = 0usize;
        while let Some((u, v)) = queue.pop_front() {
            if self.fixed.contains(&canon(u, v)) {
                return Err(Error::Degenerate(format!("constraint ({a}, {b}) crosses fixed edge ({u}, {v})")));
            }
            let (c, d) = self.quad(u, v).expect("a crossed edge is internal");
            if !segments_cross(p(u), p(v), p(c), p(d)) {
                queue.push_back((u, v));
                idle += 1;
                if idle > queue.len() {
                    return Err(Error::Degenerate(format!("constraint ({a}, {b}) could not be recovered")));
                }
                continue;
            }
            idle = 0;
            let (c, d) = self.flip(u, v);
            if segments_cross(p(a), p(b), p(c), p(d)) {
                queue.push_back((c, d));
            }
        }
        if !self.has_edge(a, b) {
            return Err(Error::Degenerate(format!("constraint ({a}, {b}) missing after recovery")));
        }
        self.fixed.insert(canon(a, b));
        Ok(())
    }

    /// Lawson flips on unconstrained edges until every one is locally
    /// Delaunay. Returns the number of flips.
    pub(crate) fn lawson(&mut self) -> usize {
        let inst = self.inst.clone();
        let p = |v| inst.pos(v);
        let mut stack: Vec<Edge> = self.edges().into_iter().rev().collect();
        let mut flips = 0;
        while let Some((a, b)) = stack.pop() {
            if self.fixed.contains(&(a, b)) {
                continue;
            }
            let Some((c, d)) = self.quad(a, b) else {
                continue;
            };
            if !incircle(p(a), p(b), p(c), p(d)).is_positive() || !segments_cross(p(a), p(b), p(c), p(d)) {
                continue;
            }
            self.flip(a, b);
            flips += 1;
            stack.extend([canon(a, d), canon(d, b), canon(b, c), canon(c, a)]);
        }
        flips
    }
}
