//! Numeric tolerances (f64 values).

/// Hermiticity, normalization and trace checks.
pub const LINALG: f64 = 1e-12;
/// Negative eigenvalues down to this magnitude are clamped to zero.
pub const SPECTRUM_CLAMP: f64 = 1e-10;
/// A residual below `-VIOLATION` counts as an EPI violation.
pub const VIOLATION: f64 = 1e-9;
/// Default threshold for Δ₀/Δ₁ and l₀² when deciding three-qubit biseparability.
pub const BISEPARABLE: f64 = 1e-9;
/// Largest imaginary part tolerated on an eigenvalue of the Wootters product.
pub const WOOTTERS_IMAG: f64 = 1e-8;
/// Kets read from files within this distance of unit norm are accepted silently.
pub const FILE_NORM_EXACT: f64 = 1e-9;
/// Kets read from files within this distance of unit norm are renormalized with a warning.
pub const FILE_NORM_LOOSE: f64 = 1e-6;
