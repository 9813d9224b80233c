//! The `(P, S)` universe and the embedded-graph container shared by every
//! construction.

mod io;
mod random;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, InstanceError, Result};
use crate::geom::predicates::{segments_cross, strictly_inside_segment};
use crate::geom::{validate_general_position, Point, Position, Segment, VertexId};

pub use io::{load_graph, load_instance, load_instance_with, save_graph, save_instance, Format, GraphFile};
pub use random::{random_instance, RandomInstanceParams};

/// How much checking [`Instance::new`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Constraint structure and all four general-position conditions.
    #[default]
    Full,
    /// Constraint structure only. The quartic cocircularity scan and the
    /// cubic collinearity scan are skipped; meant for large generated inputs.
    Structural,
}

/// A point set `P` with a set `S` of pairwise non-crossing constraints.
///
/// Constraints are stored canonically: each pair as `(min, max)` and the
/// list sorted, so two instances describing the same sets compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    points: Vec<Point>,
    constraints: Vec<(VertexId, VertexId)>,
    constraint_set: HashSet<(VertexId, VertexId)>,
    incident: Vec<Vec<VertexId>>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("points", &self.points)
            .field("constraints", &self.constraints)
            .finish()
    }
}

impl Instance {
    /// Builds and fully validates an instance. Point ids must be `0..n` in order.
    pub fn new(points: Vec<Point>, constraints: Vec<(VertexId, VertexId)>) -> Result<Self> {
        Instance::with_validation(points, constraints, Validation::Full)
    }

    pub fn with_validation(
        points: Vec<Point>,
        constraints: Vec<(VertexId, VertexId)>,
        validation: Validation,
    ) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.id != i {
                return Err(Error::InvalidParams(format!("point at index {i} has id {}", p.id)));
            }
        }
        let n = points.len();
        let mut canon = BTreeSet::new();
        for &(a, b) in &constraints {
            for v in [a, b] {
                if v >= n {
                    return Err(InstanceError::UnknownVertex(v as u64).into());
                }
            }
            if a == b {
                return Err(InstanceError::SelfLoop(a).into());
            }
            let key = (a.min(b), a.max(b));
            if !canon.insert(key) {
                return Err(InstanceError::DuplicateConstraint(key.0, key.1).into());
            }
        }
        let constraints: Vec<_> = canon.into_iter().collect();
        let pos = |v: VertexId| &points[v].pos;
        for (i, &c) in constraints.iter().enumerate() {
            for &d in &constraints[i + 1..] {
                if segments_cross(pos(c.0), pos(c.1), pos(d.0), pos(d.1)) {
                    return Err(InstanceError::ConstraintsCross(c, d).into());
                }
            }
            for p in &points {
                if strictly_inside_segment(pos(c.0), pos(c.1), &p.pos) {
                    return Err(InstanceError::ConstraintThroughVertex(c, p.id).into());
                }
            }
        }
        match validation {
            Validation::Full => {
                validate_general_position(&points, 6).map_err(InstanceError::GeneralPosition)?;
            }
            Validation::Structural => {
                for i in 0..n {
                    for j in i + 1..n {
                        if points[i].pos == points[j].pos {
                            return Err(InstanceError::GeneralPosition(crate::geom::GeneralPositionReport {
                                violations: vec![crate::geom::Degeneracy::DuplicatePoint { a: i, b: j }],
                                truncated: false,
                            })
                            .into());
                        }
                    }
                }
            }
        }
        let mut incident = vec![Vec::new(); n];
        for &(a, b) in &constraints {
            incident[a].push(b);
            incident[b].push(a);
        }
        let constraint_set = constraints.iter().copied().collect();
        Ok(Instance { points, constraints, constraint_set, incident })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> &Point {
        &self.points[v]
    }

    pub fn pos(&self, v: VertexId) -> &Position {
        &self.points[v].pos
    }

    /// Constraint endpoint pairs, canonical order.
    pub fn constraints(&self) -> &[(VertexId, VertexId)] {
        &self.constraints
    }

    pub fn constraint_segments(&self) -> Vec<Segment> {
        self.constraints
            .iter()
            .map(|&(a, b)| Segment { a: self.points[a].clone(), b: self.points[b].clone() })
            .collect()
    }

    pub fn is_constraint(&self, a: VertexId, b: VertexId) -> bool {
        self.constraint_set.contains(&(a.min(b), a.max(b)))
    }

    /// Other endpoints of the constraints incident on `v`.
    pub fn incident_constraints(&self, v: VertexId) -> &[VertexId] {
        &self.incident[v]
    }

    /// True iff segment `ab` properly crosses some constraint.
    pub fn blocked(&self, a: VertexId, b: VertexId) -> bool {
        let (pa, pb) = (self.pos(a), self.pos(b));
        self.constraints
            .iter()
            .any(|&(c, d)| segments_cross(pa, pb, self.pos(c), self.pos(d)))
    }
}

/// What a [`GeomGraph`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Visibility,
    Theta,
    HalfTheta6,
    Triangulation,
    H,
    HPrime,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Visibility => "visibility",
            GraphKind::Theta => "theta",
            GraphKind::HalfTheta6 => "half_theta6",
            GraphKind::Triangulation => "triangulation",
            GraphKind::H => "h",
            GraphKind::HPrime => "h_prime",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An undirected straight-line graph over the points of an instance.
/// Edge weights are Euclidean lengths and are never stored.
#[derive(Clone, Debug)]
pub struct GeomGraph {
    instance: Arc<Instance>,
    kind: GraphKind,
    adjacency: Vec<Vec<VertexId>>,
}

impl GeomGraph {
    /// Builds a graph from an edge list. Duplicates and orientation are
    /// normalised; self loops and unknown ids are rejected.
    pub fn from_edges<I>(instance: Arc<Instance>, kind: GraphKind, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = instance.n();
        let mut sets = vec![BTreeSet::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParams(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(Error::InvalidParams(format!("self loop at {a}")));
            }
            sets[a].insert(b);
            sets[b].insert(a);
        }
        let adjacency = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(GeomGraph { instance, kind, adjacency })
    }

    pub fn instance(&self) -> &Arc<Instance> {
        &self.instance
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(a, b)` with `a < b`, lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn weight(&self, a: VertexId, b: VertexId) -> f64 {
        euclidean_length(self.instance.point(a), self.instance.point(b))
    }

    /// Same edges, different tag.
    pub fn with_kind(mut self, kind: GraphKind) -> Self {
        self.kind = kind;
        self
    }

    /// True iff every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &GeomGraph) -> bool {
        self.edges().all(|(a, b)| other.has_edge(a, b))
    }

    /// Vertices with at least one incident edge.
    pub fn touched_vertices(&self) -> Vec<VertexId> {
        (0..self.n()).filter(|&v| !self.adjacency[v].is_empty()).collect()
    }
}

/// `|ab|`, rounded to `f64`.
pub fn euclidean_length(a: &Point, b: &Point) -> f64 {
    a.pos.dist(&b.pos)
}

/// A walk through a graph with its Euclidean length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub length: f64,
}

impl Path {
    /// Checks adjacency of consecutive vertices in `g` and sums edge lengths.
    pub fn through(g: &GeomGraph, vertices: Vec<VertexId>) -> Result<Path> {
        let mut length = 0.0;
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidParams(format!(
                    "{} and {} are not adjacent in the {} graph",
                    w[0],
                    w[1],
                    g.kind()
                )));
            }
            length += g.weight(w[0], w[1]);
        }
        Ok(Path { vertices, length })
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Exact squared lengths of the edges, in order.
    pub fn squared_lengths(&self, inst: &Instance) -> Vec<num_rational::BigRational> {
        self.edges().map(|(a, b)| inst.pos(a).dist2(inst.pos(b))).collect()
    }
}
