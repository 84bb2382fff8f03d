//! Bipartite entanglement measures on multi-qudit pure states and checks of
//! the entanglement polygon inequality (EPI)
//!
//! ```text
//! E(P_j | rest)^α  ≤  Σ_{k≠j} E(P_k | rest)^α
//! ```
//!
//! for a partition `{P_1, …, P_k}` of the parties.
//!
//! The crate is organised in four layers:
//!
//! - [`tensor`]: dimension profiles, kets, density operators, partial
//!   trace/transpose, reduced spectra, Schatten norms and seeded random states.
//! - [`measures`]: geometric entanglement, negativity, concurrence,
//!   q-concurrence, and the two-qubit Wootters concurrence.
//! - [`polygon`]: EPI residuals, the GEM indicator δ, α-sweeps and randomized audits.
//! - [`gallery`]: analytic families (three-qubit generalized Schmidt form,
//!   generalized W states, product purifications) and named example states.
//!
//! All numerics are generic over the scalar type through [`Real`]; the `*64`
//! aliases below are what the CLI and most callers want.
//!
//! Subsystem indices are 0-based in the library API. Basis labels are
//! flattened row-major with subsystem 0 most significant.

#![forbid(unsafe_code)]
// `!(x >= 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gallery;
pub mod measures;
pub mod polygon;
pub mod scalar;
pub mod tensor;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::Real;

pub use gallery::{AcinParams, GwSpec, NamedState, ProductPurificationSpec, SeparableCuts};
pub use measures::Measure;
pub use polygon::{Alpha, AlphaGrid, AuditConfig, AuditSummary, EpiReport, Indicator, Sampler};
pub use tensor::{DensityOp, Dims, Ket, Partition, SchattenP};

pub type Ket64 = Ket<f64>;
pub type Ket32 = Ket<f32>;
pub type DensityOp64 = DensityOp<f64>;
pub type DensityOp32 = DensityOp<f32>;
pub type Measure64 = Measure<f64>;
pub type Alpha64 = Alpha<f64>;
pub type EpiReport64 = EpiReport<f64>;
pub type AcinParams64 = AcinParams<f64>;
pub type GwSpec64 = GwSpec<f64>;
pub type ProductPurificationSpec64 = ProductPurificationSpec<f64>;
pub type C64 = num_complex::Complex<f64>;
