use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, Validation};
use crate::error::{Error, Result};
use crate::geom::predicates::segments_cross;
use crate::geom::{degeneracy_with, Coord, Point, VertexId};

/// Parameters of the seeded random instance generator.
#[derive(Clone, Debug)]
pub struct RandomInstanceParams {
    pub n: usize,
    /// Probability with which each candidate pair (visited in random order)
    /// is offered as a constraint. `1.0` yields a maximal non-crossing set.
    pub density: f64,
    pub seed: u64,
    /// Points are drawn from the grid `{0, 1/res, ..., side - 1/res}^2`.
    pub side: i64,
    pub resolution: i64,
    pub validation: Validation,
}

impl RandomInstanceParams {
    pub fn new(n: usize, density: f64, seed: u64) -> Self {
        RandomInstanceParams { n, density, seed, side: 100, resolution: 64, validation: Validation::Full }
    }
}

/// Uniform points on a fine rational grid, rejection-sampled into general
/// position, plus a greedily sampled non-crossing constraint set.
pub fn random_instance(params: &RandomInstanceParams) -> Result<Instance> {
    let RandomInstanceParams { n, density, seed, side, resolution, validation } = *params;
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 points, got {n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParams(format!("density {density} outside [0, 1]")));
    }
    if side < 1 || resolution < 1 {
        return Err(Error::InvalidParams("grid side and resolution must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = side * resolution;
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while points.len() < n {
        attempts += 1;
        if attempts > 1000 * n + 1000 {
            return Err(Error::InvalidParams(format!(
                "could not place {n} points in general position on a {cells}x{cells} grid"
            )));
        }
        let x = Coord::ratio(rng.gen_range(0..cells), resolution);
        let y = Coord::ratio(rng.gen_range(0..cells), resolution);
        let cand = Point::new(points.len(), x, y);
        let clash = match validation {
            Validation::Full => degeneracy_with(&points, &cand, 6).is_some(),
            // equal y already breaks the six-cone conditions, and is cheap
            Validation::Structural => points.iter().any(|p| p.y() == cand.y()),
        };
        if !clash {
            points.push(cand);
        }
    }
    let mut pairs: Vec<(VertexId, VertexId)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    let mut constraints: Vec<(VertexId, VertexId)> = Vec::new();
    for (a, b) in pairs {
        if !rng.gen_bool(density) {
            continue;
        }
        let (pa, pb) = (&points[a].pos, &points[b].pos);
        let crosses = constraints
            .iter()
            .any(|&(c, d)| segments_cross(pa, pb, &points[c].pos, &points[d].pos));
        if !crosses {
            constraints.push((a, b));
        }
    }
    Instance::with_validation(points, constraints, validation)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let p = RandomInstanceParams::new(15, 0.3, 7);
        assert_eq!(random_instance(&p).unwrap(), random_instance(&p).unwrap());
        let q = RandomInstanceParams::new(15, 0.3, 8);
        assert_ne!(random_instance(&p).unwrap(), random_instance(&q).unwrap());
    }

    #[test]
    fn density_bounds() {
        assert!(random_instance(&RandomInstanceParams::new(5, 1.5, 0)).is_err());
        assert!(random_instance(&RandomInstanceParams::new(5, -0.1, 0)).is_err());
        assert!(random_instance(&RandomInstanceParams::new(1, 0.5, 0)).is_err());
        let empty = random_instance(&RandomInstanceParams::new(12, 0.0, 3)).unwrap();
        assert!(empty.constraints().is_empty());
    }

    #[test]
    fn two_points() {
        for seed in 0..8 {
            let inst = random_instance(&RandomInstanceParams::new(2, 0.5, seed)).unwrap();
            assert_eq!(inst.n(), 2);
            assert!(inst.constraints().len() <= 1);
        }
    }
}
