//! The two-column construction on which the shortest path inside the
//! triangles crossed by `st` is about `n/4` times longer than in the
//! whole constrained Delaunay triangulation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ratio_report, RatioReport};
use crate::error::{Error, Result};
use crate::geom::{Coord, Point, VertexId};
use crate::instance::Instance;
use crate::triangulation::{build_cdt, convex_hull, extract_h, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundParams {
    pub n: usize,
    /// Half of the horizontal stretch factor.
    pub x: BigRational,
    /// Amount by which odd rows fall short of a half-unit shift.
    pub eps: BigRational,
}

impl LowerBoundParams {
    pub fn new(n: usize, x: BigRational, eps: BigRational) -> Result<Self> {
        if n < 8 || n % 4 != 0 {
            return Err(Error::InvalidParams(format!("n must be a multiple of 4 and at least 8, got {n}")));
        }
        if x < BigRational::one() {
            return Err(Error::InvalidParams(format!("x must be at least 1, got {x}")));
        }
        let half = BigRational::new(1.into(), 2.into());
        if eps <= BigRational::zero() || eps >= half {
            return Err(Error::InvalidParams(format!("eps must lie in (0, 1/2), got {eps}")));
        }
        Ok(LowerBoundParams { n, x, eps })
    }

    /// `x (n/2) / (2x + n/2 - 1)`.
    pub fn closed_form(&self) -> f64 {
        let x = self.x.to_f64().unwrap_or(f64::INFINITY);
        let h = self.n as f64 / 2.0;
        x * h / (2.0 * x + h - 1.0)
    }

    /// Relative tolerance `10 eps n` used when comparing against [`Self::closed_form`].
    pub fn tolerance(&self) -> f64 {
        10.0 * self.eps.to_f64().unwrap_or(0.0) * self.n as f64
    }

    pub fn rows(&self) -> usize {
        self.n / 2 - 1
    }
}

/// A generated instance. Row `r` holds vertices `2r` (left) and `2r + 1`
/// (right), joined by a constraint.
#[derive(Clone, Debug)]
pub struct LowerBoundInstance {
    pub instance: Arc<Instance>,
    pub s: VertexId,
    pub t: VertexId,
    pub rows: usize,
}

impl LowerBoundInstance {
    /// Convex hull edges joining two vertices of the same column two rows
    /// apart: the vertical runs on the left and right boundary.
    pub fn boundary_verticals(&self) -> Vec<(VertexId, VertexId)> {
        let inst = &self.instance;
        let all: Vec<VertexId> = (0..inst.n()).collect();
        let hull = convex_hull(inst, &all);
        let k = hull.len();
        let mut out: Vec<(VertexId, VertexId)> = (0..k)
            .map(|i| (hull[i].min(hull[(i + 1) % k]), hull[i].max(hull[(i + 1) % k])))
            .filter(|&(a, b)| {
                let column = |v: VertexId| (v < 2 * self.rows).then_some(v % 2);
                column(a).is_some() && column(a) == column(b) && b / 2 - a / 2 == 2
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn layout(params: &LowerBoundParams, eta: &BigRational) -> Vec<Point> {
    let rows = params.rows();
    let half = rat(1, 2);
    let stretch = &params.x * BigRational::from_integer(2.into());
    let mut raw: Vec<(BigRational, BigRational)> = Vec::with_capacity(params.n);
    let mut mids = Vec::with_capacity(rows);
    for r in 0..rows {
        let shift = if r % 2 == 1 { &half - &params.eps } else { BigRational::zero() };
        let bend = eta * BigRational::from_integer(BigInt::from(r * r));
        let y = BigRational::from_integer(BigInt::from(r));
        let left = &shift + &bend;
        let right = BigRational::one() + &shift - &bend;
        mids.push((&left + &right) / BigRational::from_integer(2.into()));
        raw.push((left, y.clone()));
        raw.push((right, y + eta));
    }
    raw.push((mids[0].clone(), rat(-1, 1)));
    raw.push((mids[rows - 1].clone(), BigRational::from_integer(BigInt::from(rows))));
    raw.into_iter()
        .enumerate()
        .map(|(i, (x, y))| Point::new(i, Coord::new(x * &stretch), Coord::new(y)))
        .collect()
}

/// Builds the construction. Rows are bent by a tiny quadratic term and each
/// constraint is tilted slightly so that the point set is in general position.
pub fn gen_lower_bound(params: &LowerBoundParams) -> Result<LowerBoundInstance> {
    let rows = params.rows();
    let constraints: Vec<(VertexId, VertexId)> = (0..rows).map(|r| (2 * r, 2 * r + 1)).collect();
    let base = &params.eps / BigRational::from_integer(BigInt::from(8 * params.n * params.n));
    let mut last_err = None;
    for k in 1..=16i64 {
        let eta = &base / BigRational::from_integer(BigInt::from(k));
        match Instance::new(layout(params, &eta), constraints.clone()) {
            Ok(inst) => {
                return Ok(LowerBoundInstance { instance: Arc::new(inst), s: 2 * rows, t: 2 * rows + 1, rows });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// Result of measuring the construction.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub x: f64,
    pub eps: f64,
    pub ratio: f64,
    pub closed_form: f64,
    pub tolerance: f64,
    /// `|ratio - closed_form| <= tolerance * closed_form`.
    pub within_tolerance: bool,
    /// `ratio >= closed_form * (1 - tolerance)`.
    pub above_bound: bool,
    pub paths: RatioReport,
}

fn check_structure(lb: &LowerBoundInstance, tri: &Triangulation) -> std::result::Result<(), String> {
    let h = extract_h(tri, lb.s, lb.t);
    let bad: Vec<_> = lb.boundary_verticals().into_iter().filter(|&(a, b)| h.h.has_edge(a, b)).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(format!("H contains boundary edges {bad:?}"))
    }
}

/// Builds the CDT of the construction and compares `|pi_H| / |pi_G|`
/// with the closed form.
pub fn verify_lower_bound(params: &LowerBoundParams) -> Result<LowerBoundReport> {
    let lb = gen_lower_bound(params)?;
    let tri = build_cdt(&lb.instance)?;
    check_structure(&lb, &tri)
        .map_err(|e| Error::Degenerate(format!("triangulation does not have the expected two-column structure: {e}")))?;
    let (paths, _, _) = ratio_report(&tri, lb.s, lb.t, None)?;
    let ratio = paths.ratio_h_g;
    let closed_form = params.closed_form();
    let tolerance = params.tolerance();
    Ok(LowerBoundReport {
        n: params.n,
        x: params.x.to_f64().unwrap_or(f64::NAN),
        eps: params.eps.to_f64().unwrap_or(f64::NAN),
        ratio,
        closed_form,
        tolerance,
        within_tolerance: (ratio - closed_form).abs() <= tolerance * closed_form,
        above_bound: ratio >= closed_form * (1.0 - tolerance),
        paths,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EveryTriangulationReport {
    pub triangulations: usize,
    pub min_ratio: f64,
    pub violations: Vec<String>,
}

/// Checks the CDT, all its flip neighbours and `trials` random flip walks
/// of the construction: each must contain every hull edge, its `H` must
/// avoid the boundary verticals, and the ratio must stay above the bound.
pub fn verify_every_triangulation_bound(
    params: &LowerBoundParams,
    trials: usize,
    seed: u64,
) -> Result<EveryTriangulationReport> {
    let lb = gen_lower_bound(params)?;
    let cdt = build_cdt(&lb.instance)?;
    let mut family = vec![cdt.clone()];
    family.extend(cdt.flippable_edges().into_iter().filter_map(|(a, b)| cdt.flipped(a, b)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        family.push(cdt.random_flip_walk(params.n, &mut rng));
    }
    let all: Vec<VertexId> = (0..lb.instance.n()).collect();
    let hull = convex_hull(&lb.instance, &all);
    let bound = params.closed_form() * (1.0 - params.tolerance());
    let mut rep = EveryTriangulationReport { triangulations: family.len(), min_ratio: f64::INFINITY, violations: Vec::new() };
    for (i, tri) in family.iter().enumerate() {
        for j in 0..hull.len() {
            let (a, b) = (hull[j], hull[(j + 1) % hull.len()]);
            if !tri.graph().has_edge(a, b) {
                rep.violations.push(format!("triangulation {i}: hull edge ({a}, {b}) missing"));
            }
        }
        if let Err(e) = check_structure(&lb, tri) {
            rep.violations.push(format!("triangulation {i}: {e}"));
        }
        let (paths, _, _) = ratio_report(tri, lb.s, lb.t, None)?;
        rep.min_ratio = rep.min_ratio.min(paths.ratio_h_g);
        if paths.ratio_h_g < bound {
            rep.violations.push(format!("triangulation {i}: ratio {} below {bound}", paths.ratio_h_g));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::properly_intersects;

    fn params(n: usize, x: i64) -> LowerBoundParams {
        LowerBoundParams::new(n, rat(x, 1), rat(1, 1000)).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(LowerBoundParams::new(10, rat(5, 1), rat(1, 10)).is_err());
        assert!(LowerBoundParams::new(8, rat(1, 2), rat(1, 10)).is_err());
        assert!(LowerBoundParams::new(8, rat(5, 1), rat(1, 2)).is_err());
    }

    #[test]
    fn eight_points_three_constraints() {
        let lb = gen_lower_bound(&params(8, 100)).unwrap();
        assert_eq!(lb.instance.n(), 8);
        assert_eq!(lb.instance.constraints().len(), 3);
        let st = crate::geom::Segment::new(lb.instance.point(lb.s).clone(), lb.instance.point(lb.t).clone()).unwrap();
        for &(a, b) in lb.instance.constraints() {
            let c = crate::geom::Segment::new(lb.instance.point(a).clone(), lb.instance.point(b).clone()).unwrap();
            assert!(properly_intersects(&st, &c));
        }
    }
}
