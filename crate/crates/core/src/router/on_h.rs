use crate::embedding::sort_ccw;
use crate::geom::predicates::{orient, segment_meets_triangle};
use crate::geom::Point;

use super::LocalView;

/// Neighbours `v` of the current vertex `u` in a triangulation such that
/// `uv` bounds a triangle meeting the closed segment `st`.
///
/// The two triangles on either side of `uv` are read off the angular order
/// of `N_1(u)`: consecutive neighbours spanning less than a half-turn close
/// an internal face, which in a triangulation is the triangle itself.
pub fn h_neighbors<'a>(view: &LocalView<'a>) -> Vec<&'a Point> {
    let u = view.u();
    let mut ring: Vec<&'a Point> = view.nbhd.neighbors.clone();
    sort_ccw(&u.pos, &mut ring);
    let d = ring.len();
    let (s, t) = (&view.s.pos, &view.t.pos);
    let mut out = Vec::new();
    for i in 0..d {
        let v = ring[i];
        let ccw = ring[(i + 1) % d];
        let cw = ring[(i + d - 1) % d];
        let left = ccw.id != v.id
            && orient(&u.pos, &v.pos, &ccw.pos).is_positive()
            && segment_meets_triangle(s, t, &u.pos, &v.pos, &ccw.pos);
        let right = cw.id != v.id
            && orient(&u.pos, &cw.pos, &v.pos).is_positive()
            && segment_meets_triangle(s, t, &u.pos, &cw.pos, &v.pos);
        if left || right {
            out.push(v);
        }
    }
    out.sort_by_key(|p| p.id);
    out
}
