//! Scalar traits shared by every module.
//!
//! Exact arithmetic (the potential algebra and the symbolic polynomial
//! expansions) only needs a field, so it is written against [`Scalar`] and
//! runs on `f32`, `f64` and `num_rational` types alike. Anything that needs
//! square roots or an eigensolver is written against [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use nalgebra::RealField;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Ordered field: enough for Taylor coefficients and polynomial algebra.
pub trait Scalar:
    Num + Clone + PartialOrd + Neg<Output = Self> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Clone + PartialOrd + Neg<Output = T> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Floating point scalar used by the numerical pipeline (`f32` or `f64`).
pub trait Real: Scalar + RealField + Copy + ToPrimitive + LowerExp {}

impl<T> Real for T where T: Scalar + RealField + Copy + ToPrimitive + LowerExp {}

/// Converts an `f64` literal into `T`.
///
/// Panics only if `T` cannot represent finite `f64` values at all, which
/// is not the case for any scalar used in this crate.
pub(crate) fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("scalar type cannot represent an f64 literal")
}

pub(crate) fn int<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("scalar type cannot represent an integer")
}

pub(crate) fn abs<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        -x
    } else {
        x
    }
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
