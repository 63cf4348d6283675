//! Real scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar backing the real and imaginary parts of matrix entries.
///
/// Implemented for `f32` and `f64`. All thresholds in the crate are expressed
/// as `f64` literals and converted through [`Real::lit`].
pub trait Real:
    Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count (dimension, index) into this scalar type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Picks the looser of a fixed `f64` threshold and a multiple of the type's
/// machine epsilon, so `f64` keeps the documented constant while `f32` gets
/// a threshold it can actually meet.
pub(crate) fn precision_floor<T: Real>(fixed: f64, eps_multiple: f64) -> T {
    T::lit(fixed).max(T::epsilon() * T::lit(eps_multiple))
}
