use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::predicates::Sign;

/// An element `p + q * sqrt(3)` of the field Q[sqrt 3].
///
/// Directions of the six-cone system (ray and bisector directions are
/// multiples of 30 degrees) live in this field, so every cone-boundary and
/// bisector-projection test for m = 6 reduces to the sign of one of these.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt3Scalar {
    pub p: BigRational,
    pub q: BigRational,
}

impl Sqrt3Scalar {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Sqrt3Scalar { p, q }
    }

    pub fn rational(p: BigRational) -> Self {
        Sqrt3Scalar { p, q: BigRational::zero() }
    }

    /// Exact sign of `p + q sqrt 3`.
    ///
    /// When `p` and `q` disagree in sign the result is decided by comparing
    /// `p^2` with `3 q^2`.
    pub fn sign(&self) -> Sign {
        let sp = Sign::of(&self.p);
        let sq = Sign::of(&self.q);
        if sq.is_zero() {
            return sp;
        }
        if sp.is_zero() || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2 = &self.q * &self.q * BigRational::from_integer(3.into());
        match p2.cmp(&q2) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => Sign::Zero,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.p.to_f64().unwrap_or(f64::NAN) + 3f64.sqrt() * self.q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for Sqrt3Scalar {
    type Output = Sqrt3Scalar;
    fn add(self, rhs: Self) -> Self {
        Sqrt3Scalar { p: self.p + rhs.p, q: self.q + rhs.q }
    }
}

impl Sub for Sqrt3Scalar {
    type Output = Sqrt3Scalar;
    fn sub(self, rhs: Self) -> Self {
        Sqrt3Scalar { p: self.p - rhs.p, q: self.q - rhs.q }
    }
}

impl Neg for Sqrt3Scalar {
    type Output = Sqrt3Scalar;
    fn neg(self) -> Self {
        Sqrt3Scalar { p: -self.p, q: -self.q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sign_cases() {
        assert_eq!(Sqrt3Scalar::new(r(2, 1), r(-1, 1)).sign(), Sign::Positive); // 2 - 1.732
        assert_eq!(Sqrt3Scalar::new(r(1, 1), r(-1, 1)).sign(), Sign::Negative);
        assert_eq!(Sqrt3Scalar::new(r(0, 1), r(0, 1)).sign(), Sign::Zero);
        assert_eq!(Sqrt3Scalar::new(r(-5, 1), r(3, 1)).sign(), Sign::Positive); // -5 + 5.196
        // convergents of sqrt 3 from above and below
        assert_eq!(Sqrt3Scalar::new(r(97, 56), r(-1, 1)).sign(), Sign::Positive);
        assert_eq!(Sqrt3Scalar::new(r(265, 153), r(-1, 1)).sign(), Sign::Negative);
        assert_eq!(Sqrt3Scalar::new(r(-265, 153), r(1, 1)).sign(), Sign::Positive);
    }

    #[test]
    fn sign_agrees_with_high_precision_float() {
        // 10^4 random (p, q) samples; values f64 cannot resolve are skipped.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let sqrt3 = 1.732_050_807_568_877_2_f64;
        for _ in 0..10_000 {
            let p = r(rng.gen_range(-100_000..100_000), rng.gen_range(1..1000));
            let q = r(rng.gen_range(-100_000..100_000), rng.gen_range(1..1000));
            let x = Sqrt3Scalar::new(p.clone(), q.clone());
            let f = x.to_f64();
            use num_traits::ToPrimitive;
            let mag = p.to_f64().unwrap().abs() + sqrt3 * q.to_f64().unwrap().abs();
            if f.abs() > 1e-9 * mag.max(1.0) {
                let expect = if f > 0.0 { Sign::Positive } else { Sign::Negative };
                assert_eq!(x.sign(), expect, "p={p} q={q}");
            }
        }
    }
}
