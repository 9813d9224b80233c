//! Exact geometric primitives.

mod coord;
mod general_position;
mod point;
pub mod predicates;
mod sqrt3;

pub use coord::Coord;
pub use general_position::{degeneracy_with, validate_general_position, Degeneracy, GeneralPositionReport};
pub use point::{Point, Position, Segment, VertexId};
pub use predicates::{incircle, orient, Sign};
pub use sqrt3::Sqrt3Scalar;

/// True iff the two segments cross at a point interior to both.
pub fn properly_intersects(s1: &Segment, s2: &Segment) -> bool {
    predicates::segments_cross(&s1.a.pos, &s1.b.pos, &s2.a.pos, &s2.b.pos)
}

/// True iff `p` lies strictly inside `s`.
pub fn segment_crosses_point_interior(s: &Segment, p: &Point) -> bool {
    predicates::strictly_inside_segment(&s.a.pos, &s.b.pos, &p.pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(Point::from_ints(0, a.0, a.1), Point::from_ints(1, b.0, b.1)).unwrap()
    }

    #[test]
    fn proper_intersection_examples() {
        assert!(properly_intersects(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))));
        assert!(!properly_intersects(&seg((0, 0), (1, 1)), &seg((1, 1), (2, 0))));
        assert!(!properly_intersects(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))));
    }

    #[test]
    fn point_interior_examples() {
        let s = seg((0, 0), (2, 0));
        assert!(segment_crosses_point_interior(&s, &Point::from_ints(2, 1, 0)));
        assert!(!segment_crosses_point_interior(&s, &Point::from_ints(2, 0, 0)));
        assert!(!segment_crosses_point_interior(&s, &Point::from_ints(2, 1, 1)));
    }
}
