//! Generic scalar abstraction over `f32`/`f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used by all numerical routines in this crate.
///
/// Everything downstream (divergences, tilts, region sweeps, simulation)
/// is written against this trait, so the whole library works with either
/// `f32` or `f64`; the crate root exports `f64` aliases for the common case.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Ingestion tolerance for "this vector sums to one" checks. Vectors
    /// passing the check are renormalized to sum to one exactly.
    const NORMALIZATION_TOL: Self;

    /// Convert an `f64` constant into the scalar type.
    fn from_const(v: f64) -> Self {
        Self::from_f64(v).expect("numeric constant must be representable in the scalar type")
    }

    /// Lossy conversion to `f64`, for output layers and error messages.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const NORMALIZATION_TOL: Self = 1e-9;
}

impl Scalar for f32 {
    // f32 rounding noise in a row sum easily exceeds the f64 tolerance.
    const NORMALIZATION_TOL: Self = 1e-5;
}

/// Kahan compensated accumulator. Exact enumeration sums millions of
/// non-negative terms of wildly different magnitude; plain summation
/// loses digits we later take logarithms of.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KahanSum<S: Scalar> {
    sum: S,
    carry: S,
}

impl<S: Scalar> KahanSum<S> {
    pub(crate) fn new() -> Self {
        Self {
            sum: S::zero(),
            carry: S::zero(),
        }
    }

    pub(crate) fn add(&mut self, value: S) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> S {
        self.sum
    }
}
