use thiserror::Error;

use crate::geom::{GeneralPositionReport, VertexId};

/// A coordinate literal that is not an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not an exact rational coordinate: {0:?}")]
pub struct ParseCoordError(pub String);

/// Reasons an `(P, S)` pair is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("vertex ids must be unique, {0} repeats")]
    DuplicateId(u64),
    #[error("constraint refers to unknown vertex {0}")]
    UnknownVertex(u64),
    #[error("constraint ({0}, {0}) has identical endpoints")]
    SelfLoop(VertexId),
    #[error("constraint ({0}, {1}) is listed twice")]
    DuplicateConstraint(VertexId, VertexId),
    #[error("constraints properly intersect: ({}, {}) and ({}, {})", .0.0, .0.1, .1.0, .1.1)]
    ConstraintsCross((VertexId, VertexId), (VertexId, VertexId)),
    #[error("constraint ({}, {}) passes through vertex {}", .0.0, .0.1, .1)]
    ConstraintThroughVertex((VertexId, VertexId), VertexId),
    #[error("points are not in general position: {0}")]
    GeneralPosition(GeneralPositionReport),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceError),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("malformed neighborhood: {0}")]
    Neighborhood(String),
    #[error(transparent)]
    Triangulation(#[from] crate::triangulation::TriangulationReport),
    #[error(transparent)]
    Route(#[from] crate::router::RouteError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
