//! Generic floating-point scalar used throughout the solver.

use std::fmt::{Debug, Display};

/// Floating-point scalar the whole crate is generic over: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + ndarray::ScalarOperand
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` literal; panics only on values outside the type's
    /// range, which never happens for the constants used here.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal out of range")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count out of range")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
