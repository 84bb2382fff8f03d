//! Scalar abstraction.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar the numerics are generic over.
///
/// Tolerances live here rather than as bare constants because the
/// linear-algebra thresholds that make sense for `f64` sit below `f32`
/// machine epsilon.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Default {
    /// Entrywise tolerance for Hermiticity, normalization and trace checks.
    const LINALG_TOL: f64;
    /// Eigenvalues in `[-SPECTRUM_CLAMP, 0)` are roundoff and get clamped to 0.
    const SPECTRUM_CLAMP: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    fn linalg_tol() -> Self {
        Self::lit(Self::LINALG_TOL)
    }

    fn spectrum_clamp() -> Self {
        Self::lit(Self::SPECTRUM_CLAMP)
    }
}

impl Real for f64 {
    const LINALG_TOL: f64 = crate::tol::LINALG;
    const SPECTRUM_CLAMP: f64 = crate::tol::SPECTRUM_CLAMP;
}

impl Real for f32 {
    const LINALG_TOL: f64 = 1e-5;
    const SPECTRUM_CLAMP: f64 = 1e-4;
}

pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub(crate) fn creal<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
