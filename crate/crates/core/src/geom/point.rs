use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::coord::Coord;

/// Index of a vertex inside an [`Instance`](crate::Instance), `0..n`.
pub type VertexId = usize;

/// An exact location in the plane.
///
/// A float approximation is cached next to the exact value so the predicates
/// can run a cheap filter first and only fall back to rational arithmetic
/// when the filter cannot certify a sign.
#[derive(Clone)]
pub struct Position {
    x: Coord,
    y: Coord,
    approx: [f64; 2],
    // false when the float image may carry more than one rounding error
    // (overflow or values close to the subnormal range)
    approx_ok: bool,
}

impl Position {
    pub fn new(x: Coord, y: Coord) -> Self {
        let fx = x.to_f64();
        let fy = y.to_f64();
        let ok = |v: f64, exact: &Coord| {
            v.is_finite() && (exact.value().is_zero() || v.abs() > 1e-150) && v.abs() < 1e150
        };
        let approx_ok = ok(fx, &x) && ok(fy, &y);
        Position { x, y, approx: [fx, fy], approx_ok }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Position::new(Coord::from_int(x), Coord::from_int(y))
    }

    pub fn from_rationals(x: BigRational, y: BigRational) -> Self {
        Position::new(Coord::new(x), Coord::new(y))
    }

    pub fn x(&self) -> &Coord {
        &self.x
    }

    pub fn y(&self) -> &Coord {
        &self.y
    }

    pub fn xr(&self) -> &BigRational {
        self.x.value()
    }

    pub fn yr(&self) -> &BigRational {
        self.y.value()
    }

    /// Nearest-float image of the coordinates.
    pub fn approx(&self) -> [f64; 2] {
        self.approx
    }

    pub(crate) fn filterable(&self) -> bool {
        self.approx_ok
    }

    /// Exact squared Euclidean distance.
    pub fn dist2(&self, other: &Position) -> BigRational {
        let dx = self.xr() - other.xr();
        let dy = self.yr() - other.yr();
        &dx * &dx + &dy * &dy
    }

    /// Euclidean distance rounded to f64.
    pub fn dist(&self, other: &Position) -> f64 {
        let d2 = self.dist2(other);
        let f = d2.to_f64().unwrap_or(f64::INFINITY);
        f.sqrt()
    }
}

impl PartialEq for Position {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Position {}

impl Hash for Position {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A vertex of P: an id plus its exact position.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: VertexId,
    pub pos: Position,
}

impl Point {
    pub fn new(id: VertexId, x: Coord, y: Coord) -> Self {
        Point { id, pos: Position::new(x, y) }
    }

    pub fn from_ints(id: VertexId, x: i64, y: i64) -> Self {
        Point { id, pos: Position::from_ints(x, y) }
    }

    pub fn x(&self) -> &Coord {
        self.pos.x()
    }

    pub fn y(&self) -> &Coord {
        self.pos.y()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{:?}", self.id, self.pos)
    }
}

/// A closed straight segment between two distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Returns `None` when both endpoints carry the same id.
    pub fn new(a: Point, b: Point) -> Option<Self> {
        (a.id != b.id).then_some(Segment { a, b })
    }

    pub fn ids(&self) -> (VertexId, VertexId) {
        (self.a.id, self.b.id)
    }

    pub fn has_endpoint(&self, id: VertexId) -> bool {
        self.a.id == id || self.b.id == id
    }
}
