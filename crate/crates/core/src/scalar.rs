//! Scalar types usable for root coordinates.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar for the geometric representation: `f32` or `f64`.
///
/// Root coordinates are only ever used to discover the action of the simple
/// reflections on the root set. Everything downstream is exact integer work on
/// permutation tables, so a coarser scalar only affects which groups can be
/// closed without ambiguity.
pub trait RootScalar: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Two coordinate vectors closer than this (in max norm) are the same root.
    fn snap_tolerance() -> Self;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any float")
    }
}

impl RootScalar for f64 {
    fn snap_tolerance() -> Self {
        1e-8
    }
}

impl RootScalar for f32 {
    fn snap_tolerance() -> Self {
        1e-3
    }
}
