//! Scalar abstraction for the tensor algebra.
//!
//! All core operations are generic over [`Scalar`], implemented for `f32`
//! and `f64`. Concrete aliases live at the crate root.

use nalgebra::RealField;
use num_traits::ToPrimitive;
use rustfft::FftNum;

/// Real scalar usable both as tensor entries and as the real part of the
/// Fourier-domain representation.
pub trait Scalar: RealField + FftNum + ToPrimitive + Copy + Default {
    /// Convert an `f64` constant (tolerances, physical coefficients).
    fn from_f64_lossy(v: f64) -> Self {
        num_traits::FromPrimitive::from_f64(v).expect("f64 constant not representable")
    }

    /// Widen to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }

    /// Absolute value (disambiguates `ComplexField::abs` vs `Signed::abs`).
    fn sabs(self) -> Self {
        nalgebra::ComplexField::abs(self)
    }

    fn smax(self, other: Self) -> Self {
        RealField::max(self, other)
    }

    fn smin(self, other: Self) -> Self {
        RealField::min(self, other)
    }

    /// Machine epsilon of the scalar type.
    fn eps() -> Self;
}

impl Scalar for f32 {
    fn eps() -> Self {
        f32::EPSILON
    }
}

impl Scalar for f64 {
    fn eps() -> Self {
        f64::EPSILON
    }
}
