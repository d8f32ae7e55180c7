//! Numerical experiments on averaging corrections of almost-multiplicative
//! operator-valued maps on groups.
//!
//! Operator code is generic over the real scalar (`f32` or `f64`); measures
//! and the simplex solver also accept exact rationals. The aliases below
//! fix the common choices.

pub mod convex;
pub mod eigen;
pub mod error;
pub mod group;
pub mod lp;
pub mod operator;
pub mod paradox;
pub mod rep_maps;
pub mod scalar;
pub mod stability;

use num_rational::BigRational;

pub use error::{Error, Result};
pub use scalar::{Field, Real};

pub type Operator64 = operator::Operator<f64>;
pub type Operator32 = operator::Operator<f32>;
pub type OperatorMap64<G> = rep_maps::OperatorMap<G, f64>;
pub type OperatorMap32<G> = rep_maps::OperatorMap<G, f32>;
pub type PointSet64 = convex::PointSet<f64>;
pub type HullResult64 = convex::HullResult<f64>;
/// Measure with exact rational weights.
pub type ExactMeasure<E> = group::ProbMeasure<E, BigRational>;
