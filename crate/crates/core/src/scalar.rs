//! Scalar abstraction: the numerical core is generic over the floating-point
//! type, with `f64` as the default used by the CLI and the simulator.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar used throughout the library (`f32` or `f64`).
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, for constants and config values.
    fn from_f64_c(v: f64) -> Self {
        Self::from_f64(v).expect("finite constant")
    }

    /// Lossy conversion to `f64`, for reporting and timing.
    fn to_f64_c(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Serialize
        + DeserializeOwned
        + Send
        + Sync
        + 'static
{
}

/// Shorthand used all over the numerical code for `f64` constants.
#[inline]
pub fn num<T: Scalar>(v: f64) -> T {
    T::from_f64_c(v)
}
