//! Exact comparison of sums of square roots of rationals.
//!
//! Each term `sqrt(q)` is enclosed in `[floor(sqrt(q 4^k)), floor(sqrt(q 4^k)) + 1) / 2^k`
//! and the precision `k` is raised until the two sums separate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Bits of precision tried in turn.
pub const PRECISION_STEPS: [u32; 4] = [128, 256, 512, 1024];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certified {
    Less,
    Equal,
    Greater,
    /// Sums agree to within `2^-1024` per term but are not provably equal.
    Undecided,
}

/// Outcome of checking one inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Undecided,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

fn scaled_floor_sqrt(q: &BigRational, bits: u32) -> BigInt {
    let scaled = q.numer() << (2 * bits as usize);
    (scaled / q.denom()).sqrt()
}

/// Lower end of the enclosure of `sum sqrt(terms)`, scaled by `2^bits`; the
/// upper end is this plus `terms.len()` (exclusive).
fn lower(terms: &[BigRational], bits: u32) -> BigInt {
    terms.iter().map(|q| scaled_floor_sqrt(q, bits)).sum()
}

/// Compares `sum sqrt(a_i)` with `sum sqrt(b_j)`. Terms must be non-negative.
pub fn compare_sqrt_sums(a: &[BigRational], b: &[BigRational]) -> Certified {
    assert!(a.iter().chain(b).all(|q| !q.is_negative()), "square roots of negative numbers");
    let mut a: Vec<BigRational> = a.iter().filter(|q| !q.is_zero()).cloned().collect();
    let mut b: Vec<BigRational> = b.iter().filter(|q| !q.is_zero()).cloned().collect();
    a.sort();
    b.sort();
    // drop terms common to both sides
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                ra.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                rb.push(b[j].clone());
                j += 1;
            }
        }
    }
    ra.extend_from_slice(&a[i..]);
    rb.extend_from_slice(&b[j..]);
    match (ra.is_empty(), rb.is_empty()) {
        (true, true) => return Certified::Equal,
        (true, false) => return Certified::Less,
        (false, true) => return Certified::Greater,
        _ => {}
    }
    for bits in PRECISION_STEPS {
        let la = lower(&ra, bits);
        let lb = lower(&rb, bits);
        if &la + BigInt::from(ra.len()) <= lb {
            return Certified::Less;
        }
        if &lb + BigInt::from(rb.len()) <= la {
            return Certified::Greater;
        }
    }
    Certified::Undecided
}

/// Checks `sum sqrt(lhs) <= factor * sum sqrt(rhs)` for an integer `factor >= 1`.
pub fn certified_le(lhs: &[BigRational], rhs: &[BigRational], factor: u64) -> Verdict {
    let f2 = BigRational::from_integer(BigInt::from(factor) * BigInt::from(factor));
    let rhs: Vec<BigRational> = rhs.iter().map(|q| q * &f2).collect();
    match compare_sqrt_sums(lhs, &rhs) {
        Certified::Less | Certified::Equal => Verdict::Holds,
        Certified::Greater => Verdict::Violated,
        Certified::Undecided => Verdict::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn classic_close_sums() {
        // sqrt 2 + sqrt 3 = 3.1462..., sqrt 10 = 3.1622...
        assert_eq!(compare_sqrt_sums(&[r(2, 1), r(3, 1)], &[r(10, 1)]), Certified::Less);
        // sqrt 8 = 2 sqrt 2 exactly, but not syntactically
        assert_eq!(compare_sqrt_sums(&[r(8, 1)], &[r(2, 1), r(2, 1)]), Certified::Undecided);
        assert_eq!(compare_sqrt_sums(&[r(1, 4), r(9, 1)], &[r(9, 1), r(1, 4)]), Certified::Equal);
        assert_eq!(compare_sqrt_sums(&[r(1, 4)], &[r(1, 9)]), Certified::Greater);
    }

    #[test]
    fn nearly_equal_sums_are_separated() {
        // sqrt(10^6 + 1) - 1000 = 4.99999875e-4 vs 1/2000 = 5e-4
        let a = [r(1_000_001, 1)];
        let b = [r(1_000_000, 1), r(1, 4_000_000)];
        assert_eq!(compare_sqrt_sums(&a, &b), Certified::Less);
    }

    #[test]
    fn factor_scales_right_side() {
        assert_eq!(certified_le(&[r(9, 1)], &[r(1, 1)], 3), Verdict::Holds);
        assert_eq!(certified_le(&[r(10, 1)], &[r(1, 1)], 3), Verdict::Violated);
    }
}
