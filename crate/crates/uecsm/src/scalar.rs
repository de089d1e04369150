//! Scalar abstraction: the real field underlying all complex arithmetic.

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real scalar types the library can run on.
///
/// Everything numeric in the crate is `Complex<F>` for some `F: Real`.
/// Implemented for `f32` and `f64`; note that the default [`crate::Tolerances`]
/// are chosen for `f64` and must be loosened substantially for `f32`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` literal into this scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// `self` as `f64` for reporting; lossy for wider types, exact for f32/f64.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
