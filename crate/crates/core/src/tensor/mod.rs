//! Multi-qudit state representation and the linear algebra on top of it.
//!
//! Basis labels `|i₀ i₁ … i_{n-1}⟩` are flattened row-major with subsystem 0
//! most significant: `flat = Σ_k i_k · Π_{l>k} d_l`. Every state in the
//! gallery and the on-disk state format depend on this convention.

mod dims;
mod ops;
mod partition;
pub mod random;
mod spectral;
mod state;

pub use dims::Dims;
pub use ops::{partial_trace, partial_transpose, partial_transpose_matrix};
pub use partition::Partition;
pub use random::{derive_seed, haar_random_ket, haar_unitary, random_density};
pub use spectral::{
    clean_spectrum, hermitian_eigenvalues, reduced_spectrum, schatten_norm,
    schatten_norm_of_values, SchattenP,
};
pub use state::{DensityOp, Ket};

pub(crate) use dims::check_block;
