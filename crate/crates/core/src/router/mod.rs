//! The 1-local routing engine.
//!
//! A router only ever sees a [`LocalView`]: the source, the target, the
//! current vertex with its neighbours and incident constraints, plus the
//! bounded memory carried by the message. The engine builds the view,
//! applies the decision and checks the memory budget after every step.

mod face;
mod local_ident;
mod on_h;
mod theta;

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::geom::{Point, Position, VertexId};
use crate::instance::{GeomGraph, GraphKind};
use crate::vis::{neighborhood, Neighborhood};

pub use face::{FaceRouter, FaceVariant, PlaneFilter};
pub use local_ident::local_half_theta6_edges;
pub use on_h::h_neighbors;
pub use theta::ThetaRouter;

/// One unit of routing memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemoryWord {
    /// At most `ceil(log2 n)` bits.
    Int(u64),
    Point(Position),
}

impl Serialize for MemoryWord {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MemoryWord::Int(v) => ser.serialize_u64(*v),
            MemoryWord::Point(p) => {
                let mut seq = ser.serialize_seq(Some(2))?;
                seq.serialize_element(&p.x().to_string())?;
                seq.serialize_element(&p.y().to_string())?;
                seq.end()
            }
        }
    }
}

/// The message's scratch space, capped at a fixed number of words.
#[derive(Clone, Debug, Default)]
pub struct Memory {
    words: Vec<MemoryWord>,
    capacity: usize,
}

impl Memory {
    pub fn with_capacity(capacity: usize) -> Self {
        Memory { words: Vec::new(), capacity }
    }

    pub fn words(&self) -> &[MemoryWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn get(&self, i: usize) -> Option<&MemoryWord> {
        self.words.get(i)
    }

    /// Overwrites all words at once.
    pub fn store(&mut self, words: Vec<MemoryWord>) -> Result<()> {
        if words.len() > self.capacity {
            return Err(Error::InvalidParams(format!(
                "memory holds {} words, {} requested",
                self.capacity,
                words.len()
            )));
        }
        self.words = words;
        Ok(())
    }

    pub fn clear(&mut self) {
        self.words.clear();
    }

    pub(crate) fn int(&self, i: usize) -> Result<u64> {
        match self.words.get(i) {
            Some(MemoryWord::Int(v)) => Ok(*v),
            other => Err(protocol(format!("memory word {i} should be an integer, found {other:?}"))),
        }
    }

    pub(crate) fn point(&self, i: usize) -> Result<&Position> {
        match self.words.get(i) {
            Some(MemoryWord::Point(p)) => Ok(p),
            other => Err(protocol(format!("memory word {i} should be a point, found {other:?}"))),
        }
    }
}

pub(crate) fn protocol(msg: impl Into<String>) -> Error {
    Error::Degenerate(format!("routing protocol error: {}", msg.into()))
}

/// The state a router is allowed to depend on.
#[derive(Clone, Debug)]
pub struct RoutingState {
    pub source: VertexId,
    pub current: VertexId,
    pub target: VertexId,
    pub memory: Memory,
}

/// What a router sees at the current vertex.
#[derive(Clone, Debug)]
pub struct LocalView<'a> {
    pub s: &'a Point,
    pub t: &'a Point,
    pub nbhd: Neighborhood<'a>,
}

impl<'a> LocalView<'a> {
    pub fn u(&self) -> &'a Point {
        self.nbhd.center
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepDecision {
    Forward(VertexId),
    /// No admissible next hop (the Theta baseline's failure mode).
    Stuck,
    /// A full face traversal found no way towards the target.
    Unreachable,
}

/// A step function usable by the engine. Implementations may keep caches
/// derived from the views they are shown, but nothing else.
pub trait LocalRouter {
    fn name(&self) -> &str;
    /// Maximum number of memory words the router may use.
    fn memory_budget(&self) -> usize;
    fn step(&mut self, view: &LocalView<'_>, memory: &mut Memory) -> Result<StepDecision>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Delivered,
    Stuck,
    Unreachable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub from: VertexId,
    pub to: VertexId,
    pub memory: Vec<MemoryWord>,
}

/// A complete routing run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RouteTrace {
    pub algo: String,
    pub s: VertexId,
    pub t: VertexId,
    pub delivered: bool,
    pub steps: Vec<TraceStep>,
    pub total_length: f64,
    pub edge_traversals: usize,
    pub outcome: Outcome,
}

impl RouteTrace {
    /// Visited vertices, starting with `s`.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.s];
        out.extend(self.steps.iter().map(|st| st.to));
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace json");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
pub enum RouteError {
    #[error("step budget of {budget} exhausted after {} steps", .trace.steps.len())]
    StepBudget { budget: usize, trace: Box<RouteTrace> },
    #[error("router moved from {from} to non-neighbour {to}")]
    IllegalMove { from: VertexId, to: VertexId, trace: Box<RouteTrace> },
    #[error("router stored {words} words, budget is {budget}")]
    MemoryBudget { words: usize, budget: usize, trace: Box<RouteTrace> },
    #[error("memory integer {value} exceeds {bits} bits")]
    WordTooWide { value: u64, bits: u32, trace: Box<RouteTrace> },
    #[error("router failed at vertex {at}: {message}")]
    Router { at: VertexId, message: String, trace: Box<RouteTrace> },
    #[error("bad endpoints: {0}")]
    BadEndpoints(String),
}

impl RouteError {
    pub fn trace(&self) -> Option<&RouteTrace> {
        match self {
            RouteError::StepBudget { trace, .. }
            | RouteError::IllegalMove { trace, .. }
            | RouteError::MemoryBudget { trace, .. }
            | RouteError::WordTooWide { trace, .. }
            | RouteError::Router { trace, .. } => Some(trace),
            RouteError::BadEndpoints(_) => None,
        }
    }
}

/// Engine settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Defaults to `8 n^2 + 64`.
    pub step_budget: Option<usize>,
}

/// Bits in a memory integer for an `n`-vertex graph.
pub fn word_bits(n: usize) -> u32 {
    let n = n.max(2) as u64;
    64 - (n - 1).leading_zeros()
}

/// Drives `router` from `s` until it delivers, gets stuck, declares the
/// target unreachable or exceeds the step budget.
pub fn run_router(
    graph: &GeomGraph,
    s: VertexId,
    t: VertexId,
    router: &mut dyn LocalRouter,
    opts: &EngineOptions,
) -> std::result::Result<RouteTrace, RouteError> {
    let n = graph.n();
    if s >= n || t >= n {
        return Err(RouteError::BadEndpoints(format!("s = {s}, t = {t}, n = {n}")));
    }
    let inst = graph.instance();
    let budget = opts.step_budget.unwrap_or(8 * n * n + 64);
    let bits = word_bits(n);
    let mut trace = RouteTrace {
        algo: router.name().to_string(),
        s,
        t,
        delivered: s == t,
        steps: Vec::new(),
        total_length: 0.0,
        edge_traversals: 0,
        outcome: Outcome::Delivered,
    };
    let mut state = RoutingState { source: s, current: s, target: t, memory: Memory::with_capacity(router.memory_budget()) };
    while state.current != t {
        if trace.steps.len() >= budget {
            return Err(RouteError::StepBudget { budget, trace: Box::new(trace) });
        }
        let u = state.current;
        let view = LocalView { s: inst.point(s), t: inst.point(t), nbhd: neighborhood(graph, u) };
        let decision = match router.step(&view, &mut state.memory) {
            Ok(d) => d,
            Err(e) => {
                return Err(RouteError::Router { at: u, message: e.to_string(), trace: Box::new(trace) });
            }
        };
        let words = state.memory.len();
        if words > router.memory_budget() {
            return Err(RouteError::MemoryBudget { words, budget: router.memory_budget(), trace: Box::new(trace) });
        }
        for w in state.memory.words() {
            if let MemoryWord::Int(v) = w {
                if u128::from(*v) >= 1u128 << bits {
                    return Err(RouteError::WordTooWide { value: *v, bits, trace: Box::new(trace) });
                }
            }
        }
        match decision {
            StepDecision::Forward(v) => {
                if !graph.has_edge(u, v) {
                    return Err(RouteError::IllegalMove { from: u, to: v, trace: Box::new(trace) });
                }
                trace.total_length += graph.weight(u, v);
                trace.steps.push(TraceStep { from: u, to: v, memory: state.memory.words().to_vec() });
                trace.edge_traversals += 1;
                state.current = v;
            }
            StepDecision::Stuck => {
                trace.outcome = Outcome::Stuck;
                return Ok(trace);
            }
            StepDecision::Unreachable => {
                trace.outcome = Outcome::Unreachable;
                return Ok(trace);
            }
        }
    }
    trace.delivered = true;
    Ok(trace)
}

/// Routes `s -> t` on `graph` with a fresh router for `algo`. Face routing
/// runs directly on plane graphs and on the locally identified
/// half-Theta-6 edges otherwise.
pub fn route(graph: &GeomGraph, algo: Algo, s: VertexId, t: VertexId) -> std::result::Result<RouteTrace, RouteError> {
    let plane = matches!(graph.kind(), GraphKind::HalfTheta6 | GraphKind::Triangulation | GraphKind::H);
    let mut router = algo.router(plane);
    run_router(graph, s, t, router.as_mut(), &EngineOptions::default())
}

/// Routing strategy selector used by the harness and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    Theta,
    Face1,
    Face2,
    Face1OnH,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Theta => "theta",
            Algo::Face1 => "face1",
            Algo::Face2 => "face2",
            Algo::Face1OnH => "face1-on-h",
        }
    }

    /// A fresh router for this strategy. `graph_is_plane` selects whether
    /// face routing first filters the neighbourhood down to the locally
    /// identified half-Theta-6 edges.
    pub fn router(self, graph_is_plane: bool) -> Box<dyn LocalRouter> {
        let filter = if graph_is_plane { PlaneFilter::Identity } else { PlaneFilter::LocalHalfTheta6 };
        match self {
            Algo::Theta => Box::new(ThetaRouter::new()),
            Algo::Face1 => Box::new(FaceRouter::new(FaceVariant::Face1, filter)),
            Algo::Face2 => Box::new(FaceRouter::new(FaceVariant::Face2, filter)),
            Algo::Face1OnH => Box::new(FaceRouter::new(FaceVariant::Face1, PlaneFilter::CrossedTriangles)),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(Algo::Theta),
            "face1" => Ok(Algo::Face1),
            "face2" => Ok(Algo::Face2),
            "face1-on-h" | "face1_on_h" => Ok(Algo::Face1OnH),
            other => Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_bits_cover_vertex_ids() {
        assert_eq!(word_bits(2), 1);
        assert_eq!(word_bits(3), 2);
        assert_eq!(word_bits(4), 2);
        assert_eq!(word_bits(5), 3);
        assert_eq!(word_bits(1024), 10);
    }

    #[test]
    fn memory_capacity_is_enforced() {
        let mut m = Memory::with_capacity(1);
        assert!(m.store(vec![MemoryWord::Int(1)]).is_ok());
        assert!(m.store(vec![MemoryWord::Int(1), MemoryWord::Int(2)]).is_err());
    }

    #[test]
    fn memory_words_serialize_compactly() {
        let w = vec![MemoryWord::Int(3), MemoryWord::Point(Position::from_ints(1, -2))];
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"[3,["1","-2"]]"#);
    }
}
