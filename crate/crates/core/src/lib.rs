//! Local routing on constrained visibility graphs, constrained Theta-graphs
//! and constrained triangulations, with exact geometry throughout.
//!
//! Coordinates are exact rationals. Every predicate (orientation, incircle,
//! cone membership, bisector projection) is decided exactly, so graphs and
//! routes do not depend on floating-point rounding. Lengths are reported as
//! `f64`; inequalities between path lengths are certified separately in
//! [`bounds`].

pub mod bounds;
pub mod cones;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod instance;
pub mod router;
pub mod triangulation;
pub mod vis;

pub use error::{Error, InstanceError, Result};
pub use geom::{Coord, Point, Position, Segment, VertexId};
pub use instance::{GeomGraph, GraphKind, Instance, Path};
pub use router::{Algo, LocalRouter, Outcome, RouteTrace};
pub use triangulation::Triangulation;
