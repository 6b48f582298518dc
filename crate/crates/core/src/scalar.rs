//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn lit<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}

/// Lossy conversion used for diagnostics and error payloads.
#[inline]
pub fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Threshold below which `‖b‖` is treated as exactly zero.
pub fn zero_b_tol<T: Scalar>() -> T {
    lit(1e-12)
}

/// Tolerance for interval-membership tests on κ.
///
/// `1e-9` for `f64`; widened for lower-precision types so that rounding
/// alone never trips a domain error.
pub fn membership_tol<T: Scalar>() -> T {
    lit::<T>(1e-9).max(T::epsilon() * lit(64.0))
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm_sq<T: Scalar>(v: &[T]) -> T {
    dot(v, v)
}

pub(crate) fn norm<T: Scalar>(v: &[T]) -> T {
    norm_sq(v).sqrt()
}
