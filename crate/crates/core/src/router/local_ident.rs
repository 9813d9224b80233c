use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::cones::{closest_per_subcone, cone_of, is_positive_cone, projection_cmp};
use crate::error::{Error, Result};
use crate::geom::predicates::{orient, segments_cross};
use crate::geom::{Point, VertexId};
use crate::vis::Neighborhood;

fn check_packet(nbhd: &Neighborhood<'_>) -> Result<()> {
    let c = nbhd.center.id;
    if nbhd.neighbors.windows(2).any(|w| w[0].id >= w[1].id) {
        return Err(Error::Neighborhood(format!("neighbours of {c} not strictly sorted")));
    }
    if nbhd.contains(c) {
        return Err(Error::Neighborhood(format!("{c} listed as its own neighbour")));
    }
    for e in &nbhd.constraint_ends {
        if !nbhd.contains(e.id) {
            return Err(Error::Neighborhood(format!(
                "constraint ({c}, {}) present but its endpoint is not a neighbour",
                e.id
            )));
        }
    }
    Ok(())
}

/// The half-Theta-6 edges incident on the centre of `nbhd`, computed from
/// `N_1` in the visibility graph alone.
///
/// Positive edges are the per-subcone minima of the centre's own positive
/// cones. For a neighbour `w` that has the centre `v` in its positive cone
/// `k`, the edge `wv` exists iff `v` has the smallest projection on the
/// bisector of cone `k` of `w` among the vertices visible to `v` that lie in
/// that cone and whose segment to `w` crosses no constraint incident on `v`.
/// When `wv` is itself a constraint the test is made on each side of `wv`
/// separately, and one side where `v` is closest suffices.
pub fn local_half_theta6_edges(nbhd: &Neighborhood<'_>) -> Result<Vec<VertexId>> {
    check_packet(nbhd)?;
    let v = nbhd.center;
    let mut out: BTreeSet<VertexId> =
        closest_per_subcone(v, &nbhd.neighbors, &nbhd.constraint_ends, 6, is_positive_cone)?
            .into_values()
            .collect();
    let mut pool: Vec<&Point> = nbhd.neighbors.clone();
    pool.push(v);
    for &w in &nbhd.neighbors {
        let k = cone_of(&w.pos, &v.pos, 6)?;
        if !is_positive_cone(k) || out.contains(&w.id) {
            continue;
        }
        // A constraint wv puts v on a subcone boundary of w, so v competes
        // in the subcones on both sides and each side is judged alone.
        let split = nbhd.constraint_ends.iter().any(|e| e.id == w.id);
        let mut beaten = [false, false];
        for &x in &pool {
            if x.id == w.id || x.id == v.id {
                continue;
            }
            if cone_of(&w.pos, &x.pos, 6)? != k {
                continue;
            }
            let blocked = nbhd
                .constraint_ends
                .iter()
                .any(|e| segments_cross(&w.pos, &x.pos, &v.pos, &e.pos));
            if blocked {
                continue;
            }
            if projection_cmp(k, 6, &x.pos, &v.pos)? == Ordering::Less {
                let side = usize::from(split && orient(&w.pos, &v.pos, &x.pos).is_positive());
                beaten[side] = true;
            }
        }
        let closest = if split { !(beaten[0] && beaten[1]) } else { !beaten[0] };
        if closest {
            out.insert(w.id);
        }
    }
    Ok(out.into_iter().collect())
}
