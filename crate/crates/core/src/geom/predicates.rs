//! Exact orientation, in-circle and segment predicates.
//!
//! Every predicate first evaluates in `f64` and compares the result against
//! a forward error bound that accounts for the rounding of the inputs as
//! well as of the arithmetic. Only when the float result is inside the bound
//! is the expression recomputed over `BigRational`. The returned sign is the
//! sign of the exact expression in every case.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::point::Position;

const EPS: f64 = f64::EPSILON;

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: &BigRational) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn of_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

fn filtered(value: f64, bound: f64) -> Option<Sign> {
    if !value.is_finite() || !bound.is_finite() {
        return None;
    }
    if value > bound {
        Some(Sign::Positive)
    } else if value < -bound {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Exact value of `(q - p) x (r - p)`.
pub fn orient_det(p: &Position, q: &Position, r: &Position) -> BigRational {
    let qx = q.xr() - p.xr();
    let qy = q.yr() - p.yr();
    let rx = r.xr() - p.xr();
    let ry = r.yr() - p.yr();
    qx * ry - qy * rx
}

/// Sign of the cross product `(q - p) x (r - p)`: positive when `p, q, r`
/// turn counterclockwise.
pub fn orient(p: &Position, q: &Position, r: &Position) -> Sign {
    if p.filterable() && q.filterable() && r.filterable() {
        let [px, py] = p.approx();
        let [qx, qy] = q.approx();
        let [rx, ry] = r.approx();
        let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
        let mag = (px.abs() + qx.abs()) * (py.abs() + ry.abs())
            + (py.abs() + qy.abs()) * (px.abs() + rx.abs());
        if let Some(s) = filtered(det, 8.0 * EPS * mag) {
            return s;
        }
    }
    Sign::of(&orient_det(p, q, r))
}

/// Positive iff `d` lies strictly inside the circle through `a, b, c`,
/// assuming `a, b, c` are counterclockwise (the sign flips otherwise).
pub fn incircle(a: &Position, b: &Position, c: &Position, d: &Position) -> Sign {
    if a.filterable() && b.filterable() && c.filterable() && d.filterable() {
        let [ax, ay] = a.approx();
        let [bx, by] = b.approx();
        let [cx, cy] = c.approx();
        let [dx, dy] = d.approx();
        let (adx, ady) = (ax - dx, ay - dy);
        let (bdx, bdy) = (bx - dx, by - dy);
        let (cdx, cdy) = (cx - dx, cy - dy);
        let alift = adx * adx + ady * ady;
        let blift = bdx * bdx + bdy * bdy;
        let clift = cdx * cdx + cdy * cdy;
        let det = alift * (bdx * cdy - cdx * bdy)
            + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady);
        let (aax, aay) = (ax.abs() + dx.abs(), ay.abs() + dy.abs());
        let (bbx, bby) = (bx.abs() + dx.abs(), by.abs() + dy.abs());
        let (ccx, ccy) = (cx.abs() + dx.abs(), cy.abs() + dy.abs());
        let perm = (aax * aax + aay * aay) * (bbx * ccy + ccx * bby)
            + (bbx * bbx + bby * bby) * (ccx * aay + aax * ccy)
            + (ccx * ccx + ccy * ccy) * (aax * bby + bbx * aay);
        if let Some(s) = filtered(det, 32.0 * EPS * perm) {
            return s;
        }
    }
    let adx = a.xr() - d.xr();
    let ady = a.yr() - d.yr();
    let bdx = b.xr() - d.xr();
    let bdy = b.yr() - d.yr();
    let cdx = c.xr() - d.xr();
    let cdy = c.yr() - d.yr();
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady);
    Sign::of(&det)
}

/// Sign of `q.y - p.y`, exact.
pub fn cmp_y(p: &Position, q: &Position) -> Ordering {
    p.yr().cmp(q.yr())
}

/// True iff the open segments `ab` and `cd` cross at a single point interior
/// to both. Touching at an endpoint or overlapping collinearly is not a
/// proper intersection.
pub fn segments_cross(a: &Position, b: &Position, c: &Position, d: &Position) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.is_zero() || o2.is_zero() || o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    !o3.is_zero() && !o4.is_zero() && o3 != o4
}

/// Exact dot product `(q - p) . (r - p)`.
fn dot_from(p: &Position, q: &Position, r: &Position) -> BigRational {
    (q.xr() - p.xr()) * (r.xr() - p.xr()) + (q.yr() - p.yr()) * (r.yr() - p.yr())
}

/// True iff `p` lies strictly inside segment `ab` (not at an endpoint).
pub fn strictly_inside_segment(a: &Position, b: &Position, p: &Position) -> bool {
    if a == b || p == a || p == b {
        return false;
    }
    orient(a, b, p).is_zero() && dot_from(a, b, p).is_positive() && dot_from(b, a, p).is_positive()
}

/// True iff `p` lies on the closed segment `ab`.
pub fn on_closed_segment(a: &Position, b: &Position, p: &Position) -> bool {
    p == a || p == b || strictly_inside_segment(a, b, p)
}

/// Closed segment intersection, including touching and collinear overlap.
pub fn segments_intersect_closed(a: &Position, b: &Position, c: &Position, d: &Position) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.is_zero() && o2.is_zero() {
        return on_closed_segment(a, b, c)
            || on_closed_segment(a, b, d)
            || on_closed_segment(c, d, a)
            || on_closed_segment(c, d, b);
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1.as_i32() * o2.as_i32() <= 0 && o3.as_i32() * o4.as_i32() <= 0
}

/// True iff `p` lies in the closed triangle `abc` (any orientation).
pub fn in_closed_triangle(a: &Position, b: &Position, c: &Position, p: &Position) -> bool {
    let o1 = orient(a, b, p);
    let o2 = orient(b, c, p);
    let o3 = orient(c, a, p);
    let has_neg = o1.is_negative() || o2.is_negative() || o3.is_negative();
    let has_pos = o1.is_positive() || o2.is_positive() || o3.is_positive();
    !(has_neg && has_pos)
}

/// True iff the closed segment `st` meets the closed triangle `abc`.
pub fn segment_meets_triangle(
    s: &Position,
    t: &Position,
    a: &Position,
    b: &Position,
    c: &Position,
) -> bool {
    in_closed_triangle(a, b, c, s)
        || in_closed_triangle(a, b, c, t)
        || segments_intersect_closed(s, t, a, b)
        || segments_intersect_closed(s, t, b, c)
        || segments_intersect_closed(s, t, c, a)
}

/// Parameter `lambda` in `(0, 1)` at which segment `ab` properly crosses
/// segment `st`, measured along `s -> t`.
pub fn crossing_param(s: &Position, t: &Position, a: &Position, b: &Position) -> Option<BigRational> {
    if !segments_cross(s, t, a, b) {
        return None;
    }
    let os = orient_det(a, b, s);
    let ot = orient_det(a, b, t);
    let denom = &os - &ot;
    Some(os / denom)
}

/// The point `s + lambda (t - s)`.
pub fn point_at(s: &Position, t: &Position, lambda: &BigRational) -> Position {
    let x = s.xr() + lambda * (t.xr() - s.xr());
    let y = s.yr() + lambda * (t.yr() - s.yr());
    Position::from_rationals(x, y)
}

/// Parameter of `p` along `s -> t`, assuming `p` is on the line through them.
pub fn param_along(s: &Position, t: &Position, p: &Position) -> BigRational {
    let num = dot_from(s, t, p);
    let den = s.dist2(t);
    if den.is_zero() {
        return BigRational::zero();
    }
    num / den
}

/// Upper half-plane test used by the angular order: angle in `[0, pi)`.
fn upper_half(center: &Position, p: &Position) -> bool {
    match p.yr().cmp(center.yr()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => p.xr() > center.xr(),
    }
}

/// Orders `a` and `b` by counterclockwise angle around `center`, starting
/// from the positive x direction. Points in the same direction compare equal.
pub fn cmp_around(center: &Position, a: &Position, b: &Position) -> Ordering {
    let ua = upper_half(center, a);
    let ub = upper_half(center, b);
    if ua != ub {
        return if ua { Ordering::Less } else { Ordering::Greater };
    }
    match orient(center, a, b) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    }
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
pub fn polygon_area2<'a, I>(ring: I) -> BigRational
where
    I: IntoIterator<Item = &'a Position>,
{
    let pts: Vec<&Position> = ring.into_iter().collect();
    let mut acc = BigRational::zero();
    for i in 0..pts.len() {
        let p = pts[i];
        let q = pts[(i + 1) % pts.len()];
        acc += p.xr() * q.yr() - q.xr() * p.yr();
    }
    acc
}
