//! Cones, subcones and the global constrained Theta / half-Theta-6 graphs.
//!
//! Cones are numbered clockwise starting with cone 0, whose bisector points
//! straight up. For six cones every boundary and bisector direction is a
//! multiple of 30 degrees, so all tests below are exact in `Q[sqrt 3]`.
//! Other cone counts use `f64` with a safety margin and report an error
//! rather than guess when the margin is not met.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::predicates::orient;
use crate::geom::{Point, Position, Sign, Sqrt3Scalar, VertexId};
use crate::instance::{GeomGraph, GraphKind, Instance};
use crate::vis::build_visibility_graph;

const GENERIC_MARGIN: f64 = 1e-9;

/// Positive or negative cone of the half-Theta-6 labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Positive,
    Negative,
    Unsigned,
}

/// Half-Theta-6 label of geometric cone `k`: clockwise from the top the
/// cones read `C0, C1bar, C2, C0bar, C1, C2bar`.
pub fn half_theta_label(k: usize) -> (usize, Polarity) {
    match k % 6 {
        0 => (0, Polarity::Positive),
        1 => (1, Polarity::Negative),
        2 => (2, Polarity::Positive),
        3 => (0, Polarity::Negative),
        4 => (1, Polarity::Positive),
        _ => (2, Polarity::Negative),
    }
}

pub fn is_positive_cone(k: usize) -> bool {
    k % 2 == 0
}

/// Cone of `u` on the opposite side, i.e. `v in cone k of u` iff
/// `u in cone opposite(k) of v`.
pub fn opposite(k: usize, m: usize) -> usize {
    debug_assert!(m % 2 == 0);
    (k + m / 2) % m
}

fn sqrt3_sign(p: &BigRational, q: &BigRational) -> Sign {
    Sqrt3Scalar::new(p.clone(), q.clone()).sign()
}

fn cone_of6(u: &Position, v: &Position) -> Result<usize> {
    let dx = v.xr() - u.xr();
    let dy = v.yr() - u.yr();
    let y = Sign::of(&dy);
    let a = sqrt3_sign(&dy, &-dx.clone()); // dy - sqrt3 dx
    let b = sqrt3_sign(&dy, &dx); // dy + sqrt3 dx
    use Sign::{Negative as N, Positive as P};
    let k = match (y, a, b) {
        (_, P, P) => 0,
        (P, N, _) => 1,
        (N, _, P) => 2,
        (_, N, N) => 3,
        (N, P, _) => 4,
        (P, _, N) => 5,
        _ => {
            return Err(Error::Degenerate(format!("{v} lies on a cone ray of {u}")));
        }
    };
    Ok(k)
}

fn direction_cw_from_up(u: &Position, v: &Position) -> f64 {
    let [ux, uy] = u.approx();
    let [vx, vy] = v.approx();
    let theta = (vy - uy).atan2(vx - ux).to_degrees();
    (90.0 - theta).rem_euclid(360.0)
}

fn cone_of_generic(u: &Position, v: &Position, m: usize) -> Result<usize> {
    let width = 360.0 / m as f64;
    let shifted = (direction_cw_from_up(u, v) + width / 2.0).rem_euclid(360.0);
    let frac = shifted / width;
    let k = frac.floor();
    let off = (frac - k) * width;
    if off < GENERIC_MARGIN || width - off < GENERIC_MARGIN {
        return Err(Error::Degenerate(format!("{v} is within float margin of a cone ray of {u}")));
    }
    Ok(k as usize % m)
}

/// Index of the cone of `u` containing `v`.
pub fn cone_of(u: &Position, v: &Position, m: usize) -> Result<usize> {
    if m < 3 {
        return Err(Error::InvalidParams(format!("cone count {m} below 3")));
    }
    if u == v {
        return Err(Error::Degenerate(format!("cone of a point with itself at {u}")));
    }
    if m == 6 {
        cone_of6(u, v)
    } else {
        cone_of_generic(u, v, m)
    }
}

/// Twice the projection of `d = (dx, dy)` on the bisector of cone `k` (m = 6).
fn projection6(k: usize, dx: &BigRational, dy: &BigRational) -> Sqrt3Scalar {
    const A: [i64; 6] = [0, 1, 1, 0, -1, -1];
    const B: [i64; 6] = [2, 1, -1, -2, -1, 1];
    let a = BigRational::from_integer(A[k].into());
    let b = BigRational::from_integer(B[k].into());
    Sqrt3Scalar::new(b * dy, a * dx)
}

/// Compares the bisector projections of `v` and `w` for cone `k` (the apex
/// only fixes the cone; projections differ by the apex-independent `v - w`).
pub fn projection_cmp(k: usize, m: usize, v: &Position, w: &Position) -> Result<Ordering> {
    let dx = v.xr() - w.xr();
    let dy = v.yr() - w.yr();
    let sign = if m == 6 {
        projection6(k, &dx, &dy).sign()
    } else {
        use num_traits::ToPrimitive;
        let beta = (90.0 - k as f64 * 360.0 / m as f64).to_radians();
        let fx = dx.to_f64().unwrap_or(f64::NAN);
        let fy = dy.to_f64().unwrap_or(f64::NAN);
        let val = fx * beta.cos() + fy * beta.sin();
        let scale = fx.abs() + fy.abs();
        if !(val.abs() > GENERIC_MARGIN * scale) {
            return Err(Error::Degenerate(format!(
                "projections of {v} and {w} on bisector {k} are within float margin"
            )));
        }
        if val > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    };
    match sign {
        Sign::Negative => Ok(Ordering::Less),
        Sign::Positive => Ok(Ordering::Greater),
        Sign::Zero if v == w => Ok(Ordering::Equal),
        Sign::Zero => Err(Error::Degenerate(format!(
            "{v} and {w} have equal projections on bisector {k}"
        ))),
    }
}

/// True iff `v` projects strictly closer to `u` than `w` on the bisector of
/// cone `i` of `u`. Both points must lie in that cone.
pub fn projection_closer(u: &Position, i: usize, v: &Position, w: &Position, m: usize) -> Result<bool> {
    for p in [v, w] {
        let k = cone_of(u, p, m)?;
        if k != i {
            return Err(Error::InvalidParams(format!("{p} is in cone {k} of {u}, not cone {i}")));
        }
    }
    Ok(projection_cmp(i, m, v, w)? == Ordering::Less)
}

/// One (closed) subcone of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubconeRef {
    pub apex: VertexId,
    pub cone_index: usize,
    pub subcone_index: usize,
    pub polarity: Polarity,
}

/// A boundary ray of a cone decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ray {
    /// The counterclockwise boundary ray of the given cone.
    Cone(usize),
    /// The ray towards the other endpoint of an incident constraint.
    Constraint(VertexId),
}

/// The cones of a vertex split by its incident constraints.
#[derive(Clone, Debug)]
pub struct ConeDecomposition {
    apex: Point,
    m: usize,
    /// Constraint endpoints per cone, clockwise.
    ends: Vec<Vec<Point>>,
}

impl ConeDecomposition {
    pub fn new(apex: &Point, constraint_ends: &[&Point], m: usize) -> Result<Self> {
        let mut ends: Vec<Vec<Point>> = vec![Vec::new(); m];
        for &c in constraint_ends {
            let k = cone_of(&apex.pos, &c.pos, m)?;
            ends[k].push(c.clone());
        }
        for list in &mut ends {
            list.sort_by(|a, b| match orient(&apex.pos, &a.pos, &b.pos) {
                Sign::Negative => Ordering::Less,
                Sign::Positive => Ordering::Greater,
                Sign::Zero => Ordering::Equal,
            });
        }
        Ok(ConeDecomposition { apex: apex.clone(), m, ends })
    }

    pub fn apex(&self) -> &Point {
        &self.apex
    }

    pub fn cone_count(&self) -> usize {
        self.m
    }

    /// Number of subcones of cone `k`.
    pub fn subcone_count(&self, k: usize) -> usize {
        self.ends[k].len() + 1
    }

    /// All boundary rays in clockwise order starting at the
    /// counterclockwise boundary of cone 0.
    pub fn boundary_rays(&self) -> Vec<Ray> {
        let mut out = Vec::new();
        for k in 0..self.m {
            out.push(Ray::Cone(k));
            out.extend(self.ends[k].iter().map(|c| Ray::Constraint(c.id)));
        }
        out
    }

    fn subcone(&self, k: usize, j: usize) -> SubconeRef {
        let polarity = if self.m == 6 { half_theta_label(k).1 } else { Polarity::Unsigned };
        SubconeRef { apex: self.apex.id, cone_index: k, subcone_index: j, polarity }
    }

    /// The closed subcone(s) containing `v`: two exactly when `v` is the
    /// far endpoint of a constraint splitting its cone.
    pub fn subcone_of(&self, v: &Point) -> Result<Vec<SubconeRef>> {
        let k = cone_of(&self.apex.pos, &v.pos, self.m)?;
        let mut j = 0;
        let mut on_ray = false;
        for c in &self.ends[k] {
            if c.pos == v.pos {
                on_ray = true;
            } else if orient(&self.apex.pos, &c.pos, &v.pos).is_negative() {
                j += 1;
            }
        }
        let mut out = vec![self.subcone(k, j)];
        if on_ray {
            out.push(self.subcone(k, j + 1));
        }
        Ok(out)
    }
}

/// For every subcone of `center` in a cone accepted by `use_cone`, the
/// candidate with the closest projection on the cone's bisector.
pub(crate) fn closest_per_subcone<F>(
    center: &Point,
    candidates: &[&Point],
    constraint_ends: &[&Point],
    m: usize,
    use_cone: F,
) -> Result<BTreeMap<(usize, usize), VertexId>>
where
    F: Fn(usize) -> bool,
{
    let dec = ConeDecomposition::new(center, constraint_ends, m)?;
    let mut best: BTreeMap<(usize, usize), &Point> = BTreeMap::new();
    for &v in candidates {
        for sc in dec.subcone_of(v)? {
            if !use_cone(sc.cone_index) {
                continue;
            }
            let key = (sc.cone_index, sc.subcone_index);
            match best.get(&key) {
                Some(cur) if projection_cmp(key.0, m, &v.pos, &cur.pos)? != Ordering::Less => {}
                _ => {
                    best.insert(key, v);
                }
            }
        }
    }
    Ok(best.into_iter().map(|(k, p)| (k, p.id)).collect())
}

fn cone_graph<F>(vis: &GeomGraph, m: usize, kind: GraphKind, use_cone: F) -> Result<GeomGraph>
where
    F: Fn(usize) -> bool + Copy,
{
    let inst = vis.instance();
    let mut edges = Vec::new();
    for u in 0..inst.n() {
        let nb = crate::vis::neighborhood(vis, u);
        let chosen = closest_per_subcone(nb.center, &nb.neighbors, &nb.constraint_ends, m, use_cone)?;
        edges.extend(chosen.into_values().map(|v| (u, v)));
    }
    GeomGraph::from_edges(inst.clone(), kind, edges)
}

/// Constrained Theta-m graph over a prebuilt visibility graph.
pub fn theta_from_visibility(vis: &GeomGraph, m: usize) -> Result<GeomGraph> {
    cone_graph(vis, m, GraphKind::Theta, |_| true)
}

/// Constrained Theta-m graph: per subcone, an edge to the visible vertex
/// whose projection on the bisector of the (whole) cone is closest.
pub fn build_constrained_theta(inst: &Arc<Instance>, m: usize) -> Result<GeomGraph> {
    theta_from_visibility(&build_visibility_graph(inst), m)
}

/// Constrained half-Theta-6 graph over a prebuilt visibility graph.
pub fn half_theta6_from_visibility(vis: &GeomGraph) -> Result<GeomGraph> {
    cone_graph(vis, 6, GraphKind::HalfTheta6, is_positive_cone)
}

/// Constrained half-Theta-6 graph: as the Theta-6 graph, positive cones only.
pub fn build_constrained_half_theta6(inst: &Arc<Instance>) -> Result<GeomGraph> {
    half_theta6_from_visibility(&build_visibility_graph(inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(x: i64, y: i64) -> Position {
        Position::from_ints(x, y)
    }

    #[test]
    fn cone_of_examples() {
        assert_eq!(cone_of(&pos(0, 0), &pos(0, 1), 6).unwrap(), 0);
        assert_eq!(cone_of(&pos(0, 0), &pos(0, -1), 6).unwrap(), 3);
        // exactly on the ray between cones 1 and 2
        assert!(cone_of(&pos(0, 0), &pos(1, 0), 6).is_err());
        assert_eq!(cone_of(&pos(0, 0), &pos(10, 1), 6).unwrap(), 1);
        assert_eq!(cone_of(&pos(0, 0), &pos(10, -1), 6).unwrap(), 2);
        assert_eq!(cone_of(&pos(0, 0), &pos(-10, -1), 6).unwrap(), 4);
        assert_eq!(cone_of(&pos(0, 0), &pos(-10, 1), 6).unwrap(), 5);
    }

    #[test]
    fn generic_m_agrees_with_exact_six() {
        for (x, y) in [(3, 7), (-2, 9), (5, -1), (-4, -4), (1, -8), (-9, 2), (7, 2)] {
            let exact = cone_of(&pos(0, 0), &pos(x, y), 6).unwrap();
            assert_eq!(cone_of_generic(&pos(0, 0), &pos(x, y), 6).unwrap(), exact, "({x}, {y})");
        }
    }

    #[test]
    fn projection_examples() {
        let o = pos(0, 0);
        assert!(projection_closer(&o, 0, &pos(0, 1), &pos(0, 2), 6).unwrap());
        let a = Position::from_rationals(BigRational::new(1.into(), 4.into()), BigRational::from_integer(1.into()));
        let b = Position::from_rationals(BigRational::new((-1).into(), 4.into()), BigRational::from_integer(1.into()));
        assert!(matches!(projection_closer(&o, 0, &a, &b, 6), Err(Error::Degenerate(_))));
    }

    #[test]
    fn duality_of_labels() {
        for k in 0..6 {
            let (i, p) = half_theta_label(k);
            let (j, q) = half_theta_label(opposite(k, 6));
            assert_eq!(i, j);
            assert_ne!(p, q);
        }
    }

    #[test]
    fn subcones_split_by_constraint() {
        let u = Point::from_ints(0, 0, 0);
        let c = Point::from_ints(1, 0, 10);
        let dec = ConeDecomposition::new(&u, &[&c], 6).unwrap();
        assert_eq!(dec.subcone_count(0), 2);
        let left = Point::from_ints(2, -1, 5);
        let right = Point::from_ints(3, 1, 5);
        assert_eq!(dec.subcone_of(&left).unwrap()[0].subcone_index, 0);
        assert_eq!(dec.subcone_of(&right).unwrap()[0].subcone_index, 1);
        let both: Vec<_> = dec.subcone_of(&c).unwrap().iter().map(|s| s.subcone_index).collect();
        assert_eq!(both, vec![0, 1]);
        assert_eq!(dec.boundary_rays()[1], Ray::Constraint(1));
    }
}
