//! Constrained triangulations and the subgraphs `H` and `H'` that a
//! segment `st` cuts out of them.

mod mesh;
mod subgraph;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::embedding::{trace_faces, Rotation};
use crate::error::Result;
use crate::geom::predicates::{orient, segments_cross, strictly_inside_segment};
use crate::geom::{Point, VertexId};
use crate::instance::{GeomGraph, GraphKind, Instance};

use mesh::Mesh;
pub use subgraph::{build_h_prime, extract_h, AugmentedSubgraph, CrossedSubgraph};

type Edge = (VertexId, VertexId);

/// A way in which an edge list fails to be a constrained triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriangulationViolation {
    EdgeOutOfRange { a: VertexId, b: VertexId },
    SelfLoop { v: VertexId },
    EdgesCross { e: Edge, f: Edge },
    EdgeThroughVertex { edge: Edge, vertex: VertexId },
    MissingConstraint { a: VertexId, b: VertexId },
    Disconnected { components: usize },
    NonTriangularFace { vertices: Vec<VertexId> },
    OuterFaceNotHull { outer: Vec<VertexId>, hull: Vec<VertexId> },
    EulerMismatch { vertices: usize, edges: usize, faces: usize },
}

impl fmt::Display for TriangulationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TriangulationViolation::*;
        match self {
            EdgeOutOfRange { a, b } => write!(f, "edge ({a}, {b}) refers to a missing vertex"),
            SelfLoop { v } => write!(f, "self loop at {v}"),
            EdgesCross { e, f: g } => write!(f, "edges ({}, {}) and ({}, {}) cross", e.0, e.1, g.0, g.1),
            EdgeThroughVertex { edge, vertex } => {
                write!(f, "edge ({}, {}) passes through vertex {vertex}", edge.0, edge.1)
            }
            MissingConstraint { a, b } => write!(f, "constraint ({a}, {b}) is not an edge"),
            Disconnected { components } => write!(f, "graph has {components} components"),
            NonTriangularFace { vertices } => write!(f, "internal face not a triangle: {vertices:?}"),
            OuterFaceNotHull { outer, hull } => write!(f, "outer face {outer:?} is not the convex hull {hull:?}"),
            EulerMismatch { vertices, edges, faces } => {
                write!(f, "V - E + F = {vertices} - {edges} + {faces} != 2")
            }
        }
    }
}

/// Every violation found by [`validate_triangulation`], with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub violations: Vec<TriangulationViolation>,
    pub truncated: bool,
}

impl TriangulationReport {
    pub const LIMIT: usize = 1000;

    fn push(&mut self, v: TriangulationViolation) {
        if self.violations.len() < Self::LIMIT {
            self.violations.push(v);
        } else {
            self.truncated = true;
        }
    }
}

impl fmt::Display for TriangulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a constrained triangulation ({} violations", self.violations.len())?;
        if self.truncated {
            f.write_str(", truncated")?;
        }
        f.write_str(")")?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for TriangulationReport {}

/// A plane graph containing every constraint whose internal faces are
/// triangles and whose outer face is the convex hull.
#[derive(Clone, Debug)]
pub struct Triangulation {
    graph: GeomGraph,
    faces: Vec<[VertexId; 3]>,
    constraint_edges: Vec<Edge>,
}

impl Triangulation {
    fn from_mesh(mesh: &Mesh, inst: Arc<Instance>) -> Self {
        let graph = GeomGraph::from_edges(inst, GraphKind::Triangulation, mesh.edges()).expect("mesh edges are in range");
        let mut faces = mesh.triangles();
        faces.sort_unstable();
        Triangulation { graph, faces, constraint_edges: mesh.fixed().iter().copied().collect() }
    }

    fn to_mesh(&self) -> Mesh {
        Mesh::from_triangles(self.graph.instance().clone(), &self.faces, self.constraint_edges.iter().copied().collect())
    }

    pub fn graph(&self) -> &GeomGraph {
        &self.graph
    }

    pub fn instance(&self) -> &Arc<Instance> {
        self.graph.instance()
    }

    /// Internal faces, counterclockwise, each starting at its smallest id.
    pub fn faces(&self) -> &[[VertexId; 3]] {
        &self.faces
    }

    pub fn constraint_edges(&self) -> &[Edge] {
        &self.constraint_edges
    }

    /// Unconstrained internal edges whose two triangles form a convex quadrilateral.
    pub fn flippable_edges(&self) -> Vec<Edge> {
        self.to_mesh().flippable_edges()
    }

    /// The triangulation with diagonal `ab` exchanged, if `ab` is flippable.
    pub fn flipped(&self, a: VertexId, b: VertexId) -> Option<Triangulation> {
        let mut mesh = self.to_mesh();
        if !mesh.is_flippable(a, b) {
            return None;
        }
        mesh.flip(a, b);
        Some(Triangulation::from_mesh(&mesh, self.instance().clone()))
    }

    /// Runs Lawson flips on unconstrained edges until all are locally
    /// Delaunay; returns the number of flips performed.
    pub fn flip_pass(&mut self) -> usize {
        let mut mesh = self.to_mesh();
        let flips = mesh.lawson();
        if flips > 0 {
            *self = Triangulation::from_mesh(&mesh, self.instance().clone());
        }
        flips
    }

    /// Applies `steps` uniformly chosen flips.
    pub fn random_flip_walk<R: Rng + ?Sized>(&self, steps: usize, rng: &mut R) -> Triangulation {
        let mut mesh = self.to_mesh();
        for _ in 0..steps {
            let cands = mesh.flippable_edges();
            if cands.is_empty() {
                break;
            }
            let (a, b) = cands[rng.gen_range(0..cands.len())];
            mesh.flip(a, b);
        }
        Triangulation::from_mesh(&mesh, self.instance().clone())
    }
}

/// Convex hull of the given vertices, counterclockwise from the
/// lexicographically smallest point.
pub fn convex_hull(inst: &Instance, vertices: &[VertexId]) -> Vec<VertexId> {
    let mut pts: Vec<&Point> = vertices.iter().map(|&v| inst.point(v)).collect();
    pts.sort_by(|a, b| a.pos.xr().cmp(b.pos.xr()).then_with(|| a.pos.yr().cmp(b.pos.yr())));
    pts.dedup_by_key(|p| p.id);
    if pts.len() < 3 {
        return pts.iter().map(|p| p.id).collect();
    }
    let mut lower: Vec<&Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2].pos, &lower[lower.len() - 1].pos, &p.pos).is_positive() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2].pos, &upper[upper.len() - 1].pos, &p.pos).is_positive() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).map(|p| p.id).collect()
}

fn bbox_disjoint(inst: &Instance, e: Edge, f: Edge) -> bool {
    let [ax, ay] = inst.pos(e.0).approx();
    let [bx, by] = inst.pos(e.1).approx();
    let [cx, cy] = inst.pos(f.0).approx();
    let [dx, dy] = inst.pos(f.1).approx();
    let tol = 1e-9 * (1.0 + ax.abs().max(bx.abs()).max(cx.abs()).max(dx.abs()).max(ay.abs()).max(by.abs()));
    ax.max(bx) + tol < cx.min(dx)
        || cx.max(dx) + tol < ax.min(bx)
        || ay.max(by) + tol < cy.min(dy)
        || cy.max(dy) + tol < ay.min(by)
}

fn components(g: &GeomGraph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

/// Checks that `edges` forms a constrained triangulation of `inst` and
/// reconstructs its faces.
pub fn validate_triangulation(inst: &Arc<Instance>, edges: &[Edge]) -> Result<Triangulation, TriangulationReport> {
    let n = inst.n();
    let mut report = TriangulationReport { violations: Vec::new(), truncated: false };
    let mut set = BTreeSet::new();
    for &(a, b) in edges {
        if a >= n || b >= n {
            report.push(TriangulationViolation::EdgeOutOfRange { a, b });
        } else if a == b {
            report.push(TriangulationViolation::SelfLoop { v: a });
        } else {
            set.insert((a.min(b), a.max(b)));
        }
    }
    if !report.violations.is_empty() {
        return Err(report);
    }
    let list: Vec<Edge> = set.iter().copied().collect();
    for (i, &e) in list.iter().enumerate() {
        for &f in &list[i + 1..] {
            if !bbox_disjoint(inst, e, f) && segments_cross(inst.pos(e.0), inst.pos(e.1), inst.pos(f.0), inst.pos(f.1)) {
                report.push(TriangulationViolation::EdgesCross { e, f });
            }
        }
        for p in inst.points() {
            if strictly_inside_segment(inst.pos(e.0), inst.pos(e.1), &p.pos) {
                report.push(TriangulationViolation::EdgeThroughVertex { edge: e, vertex: p.id });
            }
        }
    }
    for &(a, b) in inst.constraints() {
        if !set.contains(&(a, b)) {
            report.push(TriangulationViolation::MissingConstraint { a, b });
        }
    }
    let graph = GeomGraph::from_edges(inst.clone(), GraphKind::Triangulation, list.iter().copied())
        .expect("edges checked above");
    let comps = components(&graph);
    if comps > 1 {
        report.push(TriangulationViolation::Disconnected { components: comps });
    }
    if !report.violations.is_empty() {
        return Err(report);
    }

    let rot = Rotation::new(&graph);
    let traced = trace_faces(&graph, &rot);
    let mut faces = Vec::new();
    let mut outer = Vec::new();
    for f in &traced {
        if f.is_internal() {
            if f.vertices.len() != 3 {
                report.push(TriangulationViolation::NonTriangularFace { vertices: f.vertices.clone() });
                continue;
            }
            let v = &f.vertices;
            let i = (0..3).min_by_key(|&i| v[i]).unwrap();
            faces.push([v[i], v[(i + 1) % 3], v[(i + 2) % 3]]);
        } else {
            outer.push(f.vertices.clone());
        }
    }
    let all: Vec<VertexId> = (0..n).collect();
    let hull = convex_hull(inst, &all);
    let hull_ok = outer.len() == 1 && {
        let o = &outer[0];
        o.len() == hull.len() && (0..hull.len()).all(|i| set.contains(&(hull[i].min(hull[(i + 1) % hull.len()]), hull[i].max(hull[(i + 1) % hull.len()]))))
    };
    if n >= 3 && !hull_ok {
        report.push(TriangulationViolation::OuterFaceNotHull { outer: outer.concat(), hull: hull.clone() });
    }
    let f = traced.len() + usize::from(traced.is_empty());
    if n + f != list.len() + 2 {
        report.push(TriangulationViolation::EulerMismatch { vertices: n, edges: list.len(), faces: f });
    }
    if !report.violations.is_empty() {
        return Err(report);
    }
    faces.sort_unstable();
    Ok(Triangulation { graph, faces, constraint_edges: inst.constraints().to_vec() })
}

/// The constrained Delaunay triangulation: a sweep triangulation, constraints
/// recovered by flipping, then Lawson flips on unconstrained edges.
pub fn build_cdt(inst: &Arc<Instance>) -> Result<Triangulation> {
    let n = inst.n();
    if n < 3 {
        let edges: Vec<Edge> = if n == 2 { vec![(0, 1)] } else { Vec::new() };
        let graph = GeomGraph::from_edges(inst.clone(), GraphKind::Triangulation, edges)?;
        return Ok(Triangulation { graph, faces: Vec::new(), constraint_edges: inst.constraints().to_vec() });
    }
    let mut mesh = Mesh::sweep(inst.clone());
    for &(a, b) in inst.constraints() {
        mesh.insert_constraint(a, b)?;
    }
    mesh.lawson();
    Ok(Triangulation::from_mesh(&mesh, inst.clone()))
}
