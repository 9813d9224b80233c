//! Face routing on a locally identified plane subgraph.
//!
//! The boundary of the current face is walked with the face on the left.
//! A face is entered at an anchor point on `st` (initially `s`), and the
//! walk starts on the edge through the anchor. FACE-1 walks the whole
//! boundary, remembers the crossing with `st` nearest to `t`, walks on to
//! that edge and switches face there. FACE-2 switches at the first crossing
//! that improves on the anchor.
//!
//! Memory: `[anchor, prev, best, phase]` for FACE-1 and `[anchor, prev]`
//! for FACE-2. `prev == current` marks the first step out of a vertex
//! anchor, before any edge of the face has been walked.

use std::collections::HashMap;

use num_rational::BigRational;

use super::{local_half_theta6_edges, on_h::h_neighbors, protocol, LocalRouter, LocalView, Memory, MemoryWord, StepDecision};
use crate::embedding::{cw_first_from, cw_next_in, sort_ccw};
use crate::error::Result;
use crate::geom::predicates::{crossing_param, orient, param_along, point_at};
use crate::geom::{Point, Position, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceVariant {
    Face1,
    Face2,
}

/// Which plane subgraph of the routed graph the walk uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneFilter {
    /// The routed graph is already plane.
    Identity,
    /// Half-Theta-6 edges identified from `N_1` in the visibility graph.
    LocalHalfTheta6,
    /// Edges of triangles meeting `st`, identified from `N_1` in a triangulation.
    CrossedTriangles,
}

const SCAN: u64 = 0;
const ADVANCE: u64 = 1;

#[derive(Debug)]
pub struct FaceRouter {
    variant: FaceVariant,
    filter: PlaneFilter,
    name: &'static str,
    /// Plane neighbours already derived for a vertex (keyed with `s, t` for
    /// the crossed-triangle filter). Pure functions of the view.
    cache: HashMap<(VertexId, VertexId, VertexId), Vec<VertexId>>,
}

impl FaceRouter {
    /// A router is meant to be used with one routed graph; its cache is
    /// keyed by vertex id.
    pub fn new(variant: FaceVariant, filter: PlaneFilter) -> Self {
        let name = match (variant, filter) {
            (FaceVariant::Face1, PlaneFilter::CrossedTriangles) => "face1-on-h",
            (FaceVariant::Face1, _) => "face1",
            (FaceVariant::Face2, _) => "face2",
        };
        FaceRouter { variant, filter, name, cache: HashMap::new() }
    }

    fn plane_neighbors<'a>(&mut self, view: &LocalView<'a>) -> Result<Vec<&'a Point>> {
        let u = view.u();
        let key = match self.filter {
            PlaneFilter::Identity => return Ok(view.nbhd.neighbors.clone()),
            PlaneFilter::LocalHalfTheta6 => (u.id, u.id, u.id),
            PlaneFilter::CrossedTriangles => (view.s.id, view.t.id, u.id),
        };
        if let Some(ids) = self.cache.get(&key) {
            return Ok(ids.iter().map(|&id| view.nbhd.get(id).expect("cached from this view")).collect());
        }
        let pts: Vec<&'a Point> = match self.filter {
            PlaneFilter::LocalHalfTheta6 => local_half_theta6_edges(&view.nbhd)?
                .into_iter()
                .map(|id| view.nbhd.get(id).expect("identified among neighbours"))
                .collect(),
            _ => h_neighbors(view),
        };
        self.cache.insert(key, pts.iter().map(|p| p.id).collect());
        Ok(pts)
    }
}

struct Walk<'a, 'v> {
    s: &'v Position,
    t: &'v Position,
    u: &'a Point,
    ring: &'v [&'a Point],
}

impl<'a, 'v> Walk<'a, 'v> {
    fn lambda_of(&self, p: &Position) -> BigRational {
        param_along(self.s, self.t, p)
    }

    /// Is `u -> next` the edge the current face walk started on?
    fn is_start_edge(&self, next: &Point, anchor: &Position, lambda_anchor: &BigRational, cross: Option<&BigRational>) -> bool {
        if anchor == &self.u.pos {
            return cw_first_from(&self.u.pos, self.ring, self.t).map(|p| p.id) == Some(next.id);
        }
        cross == Some(lambda_anchor) && orient(&self.u.pos, &next.pos, self.t).is_positive()
    }
}

impl LocalRouter for FaceRouter {
    fn name(&self) -> &str {
        self.name
    }

    fn memory_budget(&self) -> usize {
        match self.variant {
            FaceVariant::Face1 => 4,
            FaceVariant::Face2 => 2,
        }
    }

    fn step(&mut self, view: &LocalView<'_>, memory: &mut Memory) -> Result<StepDecision> {
        let u = view.u();
        let mut ring = self.plane_neighbors(view)?;
        if ring.iter().any(|p| p.id == view.t.id) {
            return Ok(StepDecision::Forward(view.t.id));
        }
        if ring.is_empty() {
            return Ok(StepDecision::Unreachable);
        }
        sort_ccw(&u.pos, &mut ring);
        let (s, t) = (&view.s.pos, &view.t.pos);
        let face1 = self.variant == FaceVariant::Face1;

        if memory.is_empty() {
            if u.id != view.s.id {
                return Err(protocol("empty memory away from the source"));
            }
            let mut init = vec![MemoryWord::Point(s.clone()), MemoryWord::Int(u.id as u64)];
            if face1 {
                init.push(MemoryWord::Point(s.clone()));
                init.push(MemoryWord::Int(SCAN));
            }
            memory.store(init)?;
        }
        let mut anchor = memory.point(0)?.clone();
        let mut prev = memory.int(1)? as VertexId;
        let (mut best, mut phase) = if face1 {
            (memory.point(2)?.clone(), memory.int(3)?)
        } else {
            (anchor.clone(), SCAN)
        };
        if !orient(s, t, &anchor).is_zero() {
            return Err(protocol(format!("anchor {anchor} is not on st")));
        }
        let walk = Walk { s, t, u, ring: &ring };
        let mut lambda_anchor = walk.lambda_of(&anchor);
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        if lambda_anchor < zero || lambda_anchor > one {
            return Err(protocol(format!("anchor {anchor} is outside segment st")));
        }
        let mut lambda_best = walk.lambda_of(&best);

        let save = |memory: &mut Memory, anchor: &Position, prev: VertexId, best: &Position, phase: u64| {
            let mut words = vec![MemoryWord::Point(anchor.clone()), MemoryWord::Int(prev as u64)];
            if face1 {
                words.push(MemoryWord::Point(best.clone()));
                words.push(MemoryWord::Int(phase));
            }
            memory.store(words)
        };

        // Each pass either forwards, or switches face in place (at most
        // once per incident edge) or ends a scan; bounded accordingly.
        for _ in 0..2 * ring.len() + 4 {
            let fresh = prev == u.id;
            let next = if fresh {
                if anchor != u.pos {
                    return Err(protocol("fresh face walk away from its anchor vertex"));
                }
                cw_first_from(&u.pos, &ring, t).expect("non-empty ring")
            } else {
                cw_next_in(&ring, prev)
                    .ok_or_else(|| protocol(format!("previous vertex {prev} is not a plane neighbour of {}", u.id)))?
            };
            let cross = crossing_param(s, t, &u.pos, &next.pos);
            let mut switch_at: Option<BigRational> = None;
            if phase == SCAN {
                if !fresh && walk.is_start_edge(next, &anchor, &lambda_anchor, cross.as_ref()) {
                    if !face1 || best == anchor {
                        return Ok(StepDecision::Unreachable);
                    }
                    phase = ADVANCE;
                    continue;
                }
                if let Some(lambda) = cross.as_ref().filter(|l| **l > lambda_anchor) {
                    if face1 {
                        if *lambda > lambda_best {
                            best = point_at(s, t, lambda);
                        }
                    } else {
                        switch_at = Some(lambda.clone());
                    }
                }
            } else if cross.as_ref() == Some(&lambda_best) {
                switch_at = cross.clone();
            }
            if let Some(lambda) = switch_at {
                anchor = point_at(s, t, &lambda);
                lambda_anchor = lambda;
                best = anchor.clone();
                lambda_best = lambda_anchor.clone();
                phase = SCAN;
                if orient(&u.pos, &next.pos, t).is_negative() {
                    // the face beyond the crossing lies right of u -> next:
                    // walk it as if we had just arrived along next -> u
                    prev = next.id;
                    continue;
                }
            }
            save(memory, &anchor, u.id, &best, phase)?;
            return Ok(StepDecision::Forward(next.id));
        }
        Err(protocol(format!("no progress possible at vertex {}", u.id)))
    }
}
