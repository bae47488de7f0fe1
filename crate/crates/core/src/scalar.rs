//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use twofloat::TwoFloat;

/// Real scalar the library is generic over.
///
/// Implemented for `f32`, `f64` and the double-double [`TwoFloat`]. All
/// tolerances in the crate are written as `f64` literals and converted with
/// [`Real::lit`].
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Complementary error function.
    fn erfc(self) -> Self;

    /// Lossy conversion used for diagnostics and error messages.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn erfc(self) -> Self {
        statrs::function::erf::erfc(self)
    }
}

impl Real for f32 {
    fn erfc(self) -> Self {
        statrs::function::erf::erfc(f64::from(self)) as f32
    }
}

// erfc goes through f64; only the heat trace needs it.
impl Real for TwoFloat {
    // the FromPrimitive impl truncates through i64
    fn lit(x: f64) -> Self {
        TwoFloat::from(x)
    }

    fn erfc(self) -> Self {
        TwoFloat::from(statrs::function::erf::erfc(self.hi()))
    }
}

/// Taylor-guarded `sinh(x) / x`.
pub(crate) fn sinhc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-6) {
        T::one() + x * x / T::lit(6.0)
    } else {
        x.sinh() / x
    }
}

/// Taylor-guarded `2 tanh(x/2) / x`.
pub(crate) fn half_tanhc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-6) {
        T::one() - x * x / T::lit(12.0)
    } else {
        T::lit(2.0) * (x / T::lit(2.0)).tanh() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_branches_are_continuous() {
        for x in [9.9e-7_f64, -9.9e-7] {
            assert!((sinhc(x) - x.sinh() / x).abs() < 1e-15);
            assert!((half_tanhc(x) - 2.0 * (x / 2.0).tanh() / x).abs() < 1e-15);
        }
        assert_eq!(sinhc(0.0_f64), 1.0);
        assert_eq!(half_tanhc(0.0_f64), 1.0);
    }

    #[test]
    fn erfc_at_zero_is_one() {
        assert_eq!(Real::erfc(0.0_f64), 1.0);
        assert!((Real::erfc(0.0_f32) - 1.0).abs() < 1e-7);
        assert_eq!(Real::erfc(TwoFloat::from(0.0)), TwoFloat::from(1.0));
    }

    #[test]
    fn literals_keep_fractions() {
        for x in [0.5, -0.25, 1e-9, 3.75e12] {
            assert_eq!(<TwoFloat as Real>::lit(x).as_f64(), x);
            assert_eq!(<f32 as Real>::lit(x), x as f32);
        }
    }
}
