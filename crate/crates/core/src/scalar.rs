use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar the linear algebra is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Largest `max |U^dagger U - I|` entry accepted for a unitary.
    fn unitary_tolerance() -> Self;

    /// Negative costs down to `-cost_clamp_tolerance()` are rounding noise and clamp to zero.
    fn cost_clamp_tolerance() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    fn unitary_tolerance() -> Self {
        1e-10
    }

    fn cost_clamp_tolerance() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn unitary_tolerance() -> Self {
        1e-5
    }

    fn cost_clamp_tolerance() -> Self {
        1e-5
    }
}
