use core::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the library is generic over. Implemented for `f32`
/// and `f64`.
///
/// The geometry, quadrature and finite-difference layers work in either
/// width. The SI-unit phase and bound computations are only meaningful in
/// `f64`: intermediates such as hbar^2 (~1e-68 J^2 s^2) underflow `f32`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Nearest representable value of an `f64` literal.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal converts to scalar")
    }

    /// Lossy view as `f64`, for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_to_nearest() {
        assert_eq!(f64::lit(0.5), 0.5);
        assert_eq!(f32::lit(0.5), 0.5f32);
        assert_eq!(f32::lit(1.0e-40_f64).as_f64(), 1.0e-40_f64 as f32 as f64);
    }

    #[test]
    fn half_and_two_are_exact() {
        assert_eq!(f64::two(), 2.0);
        assert_eq!(f32::half(), 0.5f32);
    }
}
