use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use super::point::{Point, Position, VertexId};
use super::predicates::{incircle, orient, Sign};
use super::sqrt3::Sqrt3Scalar;

/// One violated general-position condition, with the offending vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Degeneracy {
    DuplicatePoint { a: VertexId, b: VertexId },
    ParallelToConeRay { a: VertexId, b: VertexId },
    PerpendicularToBisector { a: VertexId, b: VertexId },
    Collinear { a: VertexId, b: VertexId, c: VertexId },
    Cocircular { a: VertexId, b: VertexId, c: VertexId, d: VertexId },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::DuplicatePoint { a, b } => write!(f, "vertices {a} and {b} coincide"),
            Degeneracy::ParallelToConeRay { a, b } => {
                write!(f, "vertices {a} and {b} lie on a line parallel to a cone ray")
            }
            Degeneracy::PerpendicularToBisector { a, b } => {
                write!(f, "vertices {a} and {b} lie on a line perpendicular to a cone bisector")
            }
            Degeneracy::Collinear { a, b, c } => write!(f, "vertices {a}, {b}, {c} are collinear"),
            Degeneracy::Cocircular { a, b, c, d } => {
                write!(f, "vertices {a}, {b}, {c}, {d} are cocircular")
            }
        }
    }
}

/// All degeneracies found by [`validate_general_position`]. The list is
/// capped at [`GeneralPositionReport::LIMIT`] entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionReport {
    pub violations: Vec<Degeneracy>,
    pub truncated: bool,
}

impl GeneralPositionReport {
    pub const LIMIT: usize = 1000;

    fn push(&mut self, d: Degeneracy) -> bool {
        if self.violations.len() >= Self::LIMIT {
            self.truncated = true;
            return false;
        }
        self.violations.push(d);
        true
    }
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.truncated {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Direction classes a pair of vertices may not share, as angles modulo pi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairCheck {
    Ray,
    Perpendicular,
}

/// Exact test for m = 6: the ray lines and the lines perpendicular to the
/// bisectors are both the directions 0, 60 and 120 degrees.
fn six_cone_forbidden(a: &Position, b: &Position) -> bool {
    let dx: BigRational = b.xr() - a.xr();
    let dy: BigRational = b.yr() - a.yr();
    if Sign::of(&dy).is_zero() {
        return true;
    }
    let up = Sqrt3Scalar::new(dy.clone(), -dx.clone());
    let down = Sqrt3Scalar::new(dy, dx);
    up.sign().is_zero() || down.sign().is_zero()
}

/// Approximate test for other cone counts, flagged if within 1e-12 rad.
fn generic_forbidden(a: &Position, b: &Position, m: usize, which: PairCheck) -> bool {
    let [ax, ay] = a.approx();
    let [bx, by] = b.approx();
    let pi = std::f64::consts::PI;
    let theta = (by - ay).atan2(bx - ax).rem_euclid(pi);
    let step = 2.0 * pi / m as f64;
    let offset = match which {
        // rays sit at 90deg +- half a cone
        PairCheck::Ray => pi / 2.0 + step / 2.0,
        // bisectors at 90deg + k step; their perpendiculars at k step
        PairCheck::Perpendicular => 0.0,
    };
    (0..m).any(|k| {
        let dir = (offset + k as f64 * step).rem_euclid(pi);
        let d = (theta - dir).abs();
        d.min(pi - d) < 1e-12
    })
}

fn pair_violations(a: &Point, b: &Point, m: usize, out: &mut Vec<Degeneracy>) {
    if a.pos == b.pos {
        out.push(Degeneracy::DuplicatePoint { a: a.id, b: b.id });
        return;
    }
    let (ray, perp) = if m == 6 {
        let bad = six_cone_forbidden(&a.pos, &b.pos);
        (bad, bad)
    } else {
        (
            generic_forbidden(&a.pos, &b.pos, m, PairCheck::Ray),
            generic_forbidden(&a.pos, &b.pos, m, PairCheck::Perpendicular),
        )
    };
    if ray {
        out.push(Degeneracy::ParallelToConeRay { a: a.id, b: b.id });
    }
    if perp {
        out.push(Degeneracy::PerpendicularToBisector { a: a.id, b: b.id });
    }
}

/// Checks the four general-position conditions for cone count `m`:
/// no pair on a line parallel to a cone ray, no pair on a line perpendicular
/// to a cone bisector, no three collinear points and no four cocircular
/// points. For m = 6 all tests are exact; other `m` use float angles.
pub fn validate_general_position(points: &[Point], m: usize) -> Result<(), GeneralPositionReport> {
    assert!(m >= 3, "cone count must be at least 3");
    let mut report = GeneralPositionReport { violations: Vec::new(), truncated: false };
    let n = points.len();
    let mut buf = Vec::new();
    'pairs: for i in 0..n {
        for j in i + 1..n {
            buf.clear();
            pair_violations(&points[i], &points[j], m, &mut buf);
            for v in buf.drain(..) {
                if !report.push(v) {
                    break 'pairs;
                }
            }
        }
    }
    'triples: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(&points[i].pos, &points[j].pos, &points[k].pos).is_zero() {
                    let d = Degeneracy::Collinear { a: points[i].id, b: points[j].id, c: points[k].id };
                    if !report.push(d) {
                        break 'triples;
                    }
                }
            }
        }
    }
    'quads: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&points[i].pos, &points[j].pos, &points[k].pos);
                if orient(a, b, c).is_zero() {
                    continue;
                }
                for l in k + 1..n {
                    if incircle(a, b, c, &points[l].pos).is_zero() {
                        let d = Degeneracy::Cocircular {
                            a: points[i].id,
                            b: points[j].id,
                            c: points[k].id,
                            d: points[l].id,
                        };
                        if !report.push(d) {
                            break 'quads;
                        }
                    }
                }
            }
        }
    }
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(report)
    }
}

/// First degeneracy created by adding `candidate` to an already valid set.
/// Used by the random generators for rejection sampling.
pub fn degeneracy_with(points: &[Point], candidate: &Point, m: usize) -> Option<Degeneracy> {
    let mut buf = Vec::new();
    for p in points {
        pair_violations(p, candidate, m, &mut buf);
        if let Some(d) = buf.pop() {
            return Some(d);
        }
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if orient(&points[i].pos, &points[j].pos, &candidate.pos).is_zero() {
                return Some(Degeneracy::Collinear { a: points[i].id, b: points[j].id, c: candidate.id });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&points[i].pos, &points[j].pos, &points[k].pos);
                if incircle(a, b, c, &candidate.pos).is_zero() {
                    return Some(Degeneracy::Cocircular {
                        a: points[i].id,
                        b: points[j].id,
                        c: points[k].id,
                        d: candidate.id,
                    });
                }
            }
        }
    }
    None
}
