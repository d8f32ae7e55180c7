//! Scalar abstractions.
//!
//! Operator arithmetic is generic over [`Real`] (`f32`, `f64`): complex
//! entries are `Complex<T>`. Measures and the linear-programming solver are
//! generic over [`Field`], which additionally admits exact rationals so that
//! the partition identities behind the Tarski defect can be checked without
//! rounding.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Float, FromPrimitive, NumAssign, Signed, ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating point scalar backing complex operator entries.
pub trait Real:
    Float
    + Field
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal, rounding as needed.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered field used for measure weights and the simplex solver.
///
/// Floating point implementations compare against a small tolerance;
/// rational implementations compare exactly (tolerance zero).
pub trait Field: Clone + Debug + PartialOrd + Signed + NumAssign + Send + Sync + 'static {
    /// Slack allowed when checking that weights sum to one.
    fn sum_tolerance() -> Self;

    /// Magnitude below which a pivot or reduced cost is treated as zero.
    fn pivot_tolerance() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;
}

impl Field for f64 {
    fn sum_tolerance() -> Self {
        1e-12
    }

    fn pivot_tolerance() -> Self {
        1e-11
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for f32 {
    fn sum_tolerance() -> Self {
        1e-5
    }

    fn pivot_tolerance() -> Self {
        1e-5
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Field for Rational64 {
    fn sum_tolerance() -> Self {
        Self::zero()
    }

    fn pivot_tolerance() -> Self {
        Self::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Field for BigRational {
    fn sum_tolerance() -> Self {
        Self::zero()
    }

    fn pivot_tolerance() -> Self {
        Self::zero()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `true` when `x` is within the field's sum tolerance of one.
pub(crate) fn is_unit_mass<W: Field>(x: &W) -> bool {
    (x.clone() - W::one()).abs() <= W::sum_tolerance()
}

pub(crate) fn field_sum<'a, W: Field + 'a>(xs: impl IntoIterator<Item = &'a W>) -> W {
    xs.into_iter().fold(W::zero(), |acc, x| acc + x.clone())
}
