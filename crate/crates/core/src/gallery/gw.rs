//! Generalized W-class states
//! `Σ_{i=1..d} (a_{1i}|i0…0⟩ + … + a_{ni}|0…0i⟩)`, one excitation shared
//! among `n` parties, each of local dimension `d + 1`.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::tensor::random::gaussian_vec;
use crate::tensor::{Dims, Ket, Partition};

/// Coefficients `a_{ji}`: row `j` is a party, column `i − 1` an excitation level.
#[derive(Debug, Clone, PartialEq)]
pub struct GwSpec<T: Real> {
    coeffs: DMatrix<Complex<T>>,
}

impl<T: Real> GwSpec<T> {
    pub fn new(coeffs: DMatrix<Complex<T>>) -> Result<Self> {
        if coeffs.nrows() == 0 || coeffs.ncols() == 0 {
            return Err(Error::InvalidParameter(
                "GW spec needs n >= 1 and d >= 1".into(),
            ));
        }
        let norm2 = coeffs.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if (norm2 - T::one()).abs() > T::linalg_tol() {
            return Err(Error::NotNormalized(norm2.sqrt().as_f64()));
        }
        Ok(Self { coeffs })
    }

    pub fn normalized(coeffs: DMatrix<Complex<T>>) -> Result<Self> {
        let norm = coeffs
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if !(norm > T::zero()) {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(coeffs.unscale(norm))
    }

    /// Complex Gaussian coefficients, normalized.
    pub fn random<R: Rng + ?Sized>(parties: usize, levels: usize, rng: &mut R) -> Result<Self> {
        let v = gaussian_vec::<T, _>(rng, parties * levels);
        Self::normalized(DMatrix::from_vec(parties, levels, v))
    }

    pub fn parties(&self) -> usize {
        self.coeffs.nrows()
    }

    /// Number of excitation levels `d`; local dimension is `d + 1`.
    pub fn levels(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &DMatrix<Complex<T>> {
        &self.coeffs
    }

    /// `Σ_i |a_{ji}|²` for each party `j`.
    pub fn party_weights(&self) -> Vec<T> {
        self.coeffs
            .row_iter()
            .map(|row| row.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()))
            .collect()
    }

    pub fn dims(&self) -> Dims {
        Dims::uniform(self.levels() + 1, self.parties()).expect("levels >= 1")
    }
}

pub fn gw_state<T: Real>(spec: &GwSpec<T>) -> Ket<T> {
    let dims = spec.dims();
    let strides = dims.strides();
    let mut amps = vec![creal(T::zero()); dims.total()];
    for j in 0..spec.parties() {
        for i in 0..spec.levels() {
            amps[(i + 1) * strides[j]] = spec.coeffs[(j, i)];
        }
    }
    Ket::normalized(dims, amps).expect("normalized spec")
}

/// Regroups the parties into the blocks of `partition`.
///
/// A block's coefficient vector is its members' vectors concatenated in
/// ascending party order, zero-padded to the longest block.
pub fn gw_coarse_grain<T: Real>(spec: &GwSpec<T>, partition: &Partition) -> Result<GwSpec<T>> {
    if partition.parties() != spec.parties() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} parties, GW spec has {}",
            partition.parties(),
            spec.parties()
        )));
    }
    let d = spec.levels();
    let width = partition
        .blocks()
        .iter()
        .map(|b| b.len() * d)
        .max()
        .unwrap_or(d);
    let mut coeffs = DMatrix::zeros(partition.len(), width);
    for (row, block) in partition.blocks().iter().enumerate() {
        for (m, &party) in block.iter().enumerate() {
            for i in 0..d {
                coeffs[(row, m * d + i)] = spec.coeffs[(party, i)];
            }
        }
    }
    GwSpec::new(coeffs)
}

/// Negativities `(√(a(b+c)), √(b(a+c)), √(c(a+b)))` across `P_j | rest` for
/// a tripartition with block weights `a, b, c`.
pub fn gw_negativity_closed<T: Real>(spec: &GwSpec<T>, partition: &Partition) -> Result<[T; 3]> {
    if partition.len() != 3 {
        return Err(Error::InvalidPartition(format!(
            "need a tripartition, got {} blocks",
            partition.len()
        )));
    }
    let w = gw_coarse_grain(spec, partition)?.party_weights();
    let (a, b, c) = (w[0], w[1], w[2]);
    Ok([
        (a * (b + c)).sqrt(),
        (b * (a + c)).sqrt(),
        (c * (a + b)).sqrt(),
    ])
}
