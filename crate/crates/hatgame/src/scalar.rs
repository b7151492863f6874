//! Scalar abstraction so every probability computation runs either in
//! floating point or exactly in rationals.
//!
//! All formulas in this crate are polynomial in the color probabilities, so
//! the only operations required are ring arithmetic, comparison, and a few
//! small rational constants. Equality grouping (phi ties, boundary
//! detection) uses a per-type tolerance: `1e-12` for `f64`, zero for exact
//! rationals.

use num::traits::Signed;
use num::{BigInt, BigRational};

/// Number type the solver computes probabilities in.
pub trait Scalar:
    Clone + PartialOrd + Signed + std::fmt::Debug + std::fmt::Display + 'static
{
    /// The exact value `num / den`.
    fn ratio(num: i64, den: i64) -> Self;

    /// Slack used when grouping equal values; zero for exact types.
    fn tie_tolerance() -> Self;

    /// Lossy conversion for display and sampling-based checks.
    fn to_f64(&self) -> f64;

    fn from_u64(v: u64) -> Self {
        Self::ratio(v as i64, 1)
    }
}

impl Scalar for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        num as f64 / den as f64
    }

    fn tie_tolerance() -> Self {
        1e-12
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        num as f32 / den as f32
    }

    fn tie_tolerance() -> Self {
        1e-5
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn tie_tolerance() -> Self {
        num::traits::Zero::zero()
    }

    fn to_f64(&self) -> f64 {
        num::traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `base^exp` by repeated multiplication; exponents here never exceed N.
pub fn ipow<T: Scalar>(base: &T, exp: u32) -> T {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// `|a - b| <= tie_tolerance` for the scalar type.
pub fn approx_eq<T: Scalar>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).abs() <= T::tie_tolerance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn ratio_constants() {
        assert_eq!(f64::ratio(1, 2), 0.5);
        assert_eq!(Rational::ratio(5, 9), Rational::new(5.into(), 9.into()));
    }

    #[test]
    fn ipow_small_exponents() {
        assert_eq!(ipow(&2.0f64, 10), 1024.0);
        assert_eq!(ipow(&Rational::ratio(1, 3), 3), Rational::ratio(1, 27));
        assert_eq!(ipow(&0.7f64, 0), 1.0);
    }

    #[test]
    fn tolerance_is_zero_for_rationals() {
        assert!(approx_eq(&Rational::ratio(1, 3), &Rational::ratio(1, 3)));
        assert!(!approx_eq(
            &Rational::ratio(1, 3),
            &Rational::ratio(33333333333333, 100000000000000)
        ));
        assert!(approx_eq(&(0.1f64 + 0.2), &0.3));
    }
}
