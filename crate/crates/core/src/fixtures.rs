//! Small hand-built instances used by tests, the harness and the command line.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{Coord, Point};
use crate::instance::Instance;

fn pt(id: usize, x: (i64, i64), y: (i64, i64)) -> Point {
    Point::new(id, Coord::ratio(x.0, x.1), Coord::ratio(y.0, y.1))
}

/// Four points on which Theta routing from `0` to `3` gets stuck: the
/// constraint `(1, 2)` hides `3` from `0`, and the cone of `0` containing
/// `3` holds no other vertex.
pub fn theta_trap() -> Arc<Instance> {
    let pts = vec![pt(0, (0, 1), (0, 1)), pt(1, (-1, 1), (1, 1)), pt(2, (1, 1), (11, 10)), pt(3, (1, 20), (3, 1))];
    Arc::new(Instance::new(pts, vec![(1, 2)]).expect("fixture is valid"))
}

/// A vertex `u = 0` whose upper cone is split by the constraint `(0, 2)`.
/// `1` is closest in the left subcone, `2` in the right one, and `3` is
/// closer than `2` but hidden behind the constraint `(4, 5)`.
pub fn subcone_example() -> Arc<Instance> {
    let pts = vec![
        pt(0, (0, 1), (0, 1)),
        pt(1, (-1, 2), (1, 1)),
        pt(2, (-1, 5), (3, 1)),
        pt(3, (3, 5), (12, 5)),
        pt(4, (1, 1), (1, 2)),
        pt(5, (1, 5), (4, 1)),
    ];
    Arc::new(Instance::new(pts, vec![(0, 2), (4, 5)]).expect("fixture is valid"))
}

/// `k` points on an outward spiral joined by a chain of constraints, with
/// `s = 0` at the centre end. Coordinates are snapped to multiples of
/// `1/1024` and nudged until the set is in general position.
pub fn spiral(k: usize) -> Result<Arc<Instance>> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("a spiral needs at least 3 points, got {k}")));
    }
    const RES: i64 = 1024;
    let mut pts: Vec<Point> = Vec::with_capacity(k);
    for i in 0..k {
        let a = i as f64 * 0.9;
        let r = 4.0 + 1.6 * a;
        let (mut x, mut y) = ((r * a.cos() * RES as f64).round() as i64, (r * a.sin() * RES as f64).round() as i64);
        let mut nudge = 0;
        loop {
            let cand = Point::new(i, Coord::ratio(x, RES), Coord::ratio(y, RES));
            if crate::geom::degeneracy_with(&pts, &cand, 6).is_none() {
                pts.push(cand);
                break;
            }
            nudge += 1;
            if nudge > 64 {
                return Err(Error::Degenerate(format!("could not place spiral point {i}")));
            }
            x += 1;
            y += nudge % 2;
        }
    }
    let constraints = (0..k - 1).map(|i| (i, i + 1)).collect();
    Ok(Arc::new(Instance::new(pts, constraints)?))
}
