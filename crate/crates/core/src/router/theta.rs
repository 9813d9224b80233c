use std::cmp::Ordering;

use super::{LocalRouter, LocalView, Memory, StepDecision};
use crate::cones::{cone_of, projection_cmp};
use crate::error::Result;

/// Greedy Theta-routing: follow the edge to the closest neighbour (by
/// bisector projection) in the cone that contains the target. Memoryless.
#[derive(Clone, Debug, Default)]
pub struct ThetaRouter;

impl ThetaRouter {
    pub fn new() -> Self {
        ThetaRouter
    }
}

impl LocalRouter for ThetaRouter {
    fn name(&self) -> &str {
        "theta"
    }

    fn memory_budget(&self) -> usize {
        0
    }

    fn step(&mut self, view: &LocalView<'_>, _memory: &mut Memory) -> Result<StepDecision> {
        let u = view.u();
        if view.nbhd.contains(view.t.id) {
            return Ok(StepDecision::Forward(view.t.id));
        }
        let k = cone_of(&u.pos, &view.t.pos, 6)?;
        let mut best: Option<&crate::geom::Point> = None;
        for &v in &view.nbhd.neighbors {
            if cone_of(&u.pos, &v.pos, 6)? != k {
                continue;
            }
            match best {
                Some(b) if projection_cmp(k, 6, &v.pos, &b.pos)? != Ordering::Less => {}
                _ => best = Some(v),
            }
        }
        let Some(next) = best else {
            return Ok(StepDecision::Stuck);
        };
        Ok(StepDecision::Forward(next.id))
    }
}
