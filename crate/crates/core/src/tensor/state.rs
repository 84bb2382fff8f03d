use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::dims::{check_block, Dims};
use super::ops;
use super::spectral::{self, SchattenP};
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};

/// Normalized pure state over a [`Dims`] profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T: Real> {
    dims: Dims,
    amps: DVector<Complex<T>>,
}

impl<T: Real> Ket<T> {
    /// Wraps `amps`, which must already have unit norm.
    pub fn new(dims: Dims, amps: Vec<Complex<T>>) -> Result<Self> {
        check_len(&dims, amps.len())?;
        let amps = DVector::from_vec(amps);
        let norm = amps.norm();
        if (norm - T::one()).abs() > T::linalg_tol() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        Ok(Self { dims, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(dims: Dims, amps: Vec<Complex<T>>) -> Result<Self> {
        check_len(&dims, amps.len())?;
        let mut amps = DVector::from_vec(amps);
        let norm = amps.norm();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        amps.unscale_mut(norm);
        Ok(Self { dims, amps })
    }

    /// Builds a ket from `(basis label, amplitude)` pairs and normalizes it.
    pub fn from_terms(dims: Dims, terms: &[(Vec<usize>, Complex<T>)]) -> Result<Self> {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dims.total()];
        for (label, a) in terms {
            amps[dims.flat_index(label)?] += *a;
        }
        Self::normalized(dims, amps)
    }

    pub fn basis(dims: Dims, label: &[usize]) -> Result<Self> {
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dims.total()];
        amps[dims.flat_index(label)?] = creal(T::one());
        Ok(Self {
            dims,
            amps: DVector::from_vec(amps),
        })
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Ket<T>) -> Ket<T> {
        let mut dims = self.dims.as_slice().to_vec();
        dims.extend_from_slice(other.dims.as_slice());
        let dims = Dims::new(dims).expect("product of valid profiles");
        let amps = self.amps.kronecker(&other.amps);
        Self { dims, amps }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amps
    }

    pub fn amplitude(&self, label: &[usize]) -> Result<Complex<T>> {
        Ok(self.amps[self.dims.flat_index(label)?])
    }

    pub fn norm(&self) -> T {
        self.amps.norm()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityOp<T> {
        DensityOp {
            dims: self.dims.clone(),
            matrix: &self.amps * self.amps.adjoint(),
        }
    }

    /// Coefficient matrix `M[s][r]` with `s` running over `block` and `r` over
    /// its complement, so that `ρ_block = M M†`.
    pub fn bipartite_matrix(&self, block: &[usize]) -> Result<DMatrix<Complex<T>>> {
        let block = check_block(&self.dims, block, false)?;
        let (inner, outer) = self.dims.split_indices(&block);
        let rows = self.dims.block_dim(&block);
        let cols = self.dims.total() / rows;
        let mut m = DMatrix::zeros(rows, cols);
        for (flat, a) in self.amps.iter().enumerate() {
            m[(inner[flat], outer[flat])] = *a;
        }
        Ok(m)
    }

    /// Reduced density operator on `keep`, computed directly from the amplitudes.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOp<T>> {
        let keep = check_block(&self.dims, keep, false)?;
        let m = self.bipartite_matrix(&keep)?;
        Ok(DensityOp {
            dims: self.dims.select(&keep)?,
            matrix: &m * m.adjoint(),
        })
    }

    /// Applies `unitary` to subsystem `k`.
    pub fn apply_local(&self, k: usize, unitary: &DMatrix<Complex<T>>) -> Result<Ket<T>> {
        let d = *self
            .dims
            .as_slice()
            .get(k)
            .ok_or_else(|| Error::InvalidBlock(format!("no subsystem {k}")))?;
        if unitary.shape() != (d, d) {
            return Err(Error::LengthMismatch {
                expected: d,
                got: unitary.nrows(),
            });
        }
        let stride = self.dims.strides()[k];
        let mut out = DVector::zeros(self.dims.total());
        for flat in 0..self.dims.total() {
            let digit = (flat / stride) % d;
            let base = flat - digit * stride;
            let a = self.amps[flat];
            for row in 0..d {
                out[base + row * stride] += unitary[(row, digit)] * a;
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps: out,
        })
    }
}

fn check_len(dims: &Dims, got: usize) -> Result<()> {
    if got != dims.total() {
        return Err(Error::LengthMismatch {
            expected: dims.total(),
            got,
        });
    }
    Ok(())
}

/// Hermitian, positive semidefinite, unit-trace operator over a [`Dims`] profile.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp<T: Real> {
    pub(crate) dims: Dims,
    pub(crate) matrix: DMatrix<Complex<T>>,
}

impl<T: Real> DensityOp<T> {
    pub fn new(dims: Dims, matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let d = dims.total();
        if matrix.shape() != (d, d) {
            return Err(Error::LengthMismatch {
                expected: d,
                got: matrix.nrows(),
            });
        }
        let dev = spectral::hermitian_deviation(&matrix);
        if dev > T::linalg_tol() {
            return Err(Error::NotHermitian(dev.as_f64()));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::linalg_tol() || tr.im.abs() > T::linalg_tol() {
            return Err(Error::InvalidTrace(tr.re.as_f64()));
        }
        let rho = Self { dims, matrix };
        rho.spectrum()?;
        Ok(rho)
    }

    pub(crate) fn from_parts(dims: Dims, matrix: DMatrix<Complex<T>>) -> Self {
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.matrix
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
        self.matrix
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Eigenvalues in descending order after Hermitization and roundoff cleanup.
    pub fn spectrum(&self) -> Result<Vec<T>> {
        spectral::clean_spectrum(spectral::hermitian_eigenvalues(&self.matrix))
    }

    /// Numerical rank: eigenvalues above `tol`.
    pub fn rank(&self, tol: T) -> Result<usize> {
        Ok(self.spectrum()?.iter().filter(|&&x| x > tol).count())
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOp<T>> {
        ops::partial_trace(self, keep)
    }

    pub fn partial_transpose(&self, block: &[usize]) -> Result<DMatrix<Complex<T>>> {
        ops::partial_transpose(self, block)
    }

    /// Schatten norm from the eigenvalues (ρ is Hermitian).
    pub fn schatten_norm(&self, p: SchattenP<T>) -> Result<T> {
        let eig = spectral::hermitian_eigenvalues(&self.matrix);
        Ok(spectral::schatten_norm_of_values(
            &eig.iter().map(|x| x.abs()).collect::<Vec<_>>(),
            p,
        ))
    }

    /// `ρ ⊗ σ`.
    pub fn tensor(&self, other: &DensityOp<T>) -> DensityOp<T> {
        let mut dims = self.dims.as_slice().to_vec();
        dims.extend_from_slice(other.dims.as_slice());
        DensityOp {
            dims: Dims::new(dims).expect("product of valid profiles"),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Maximally mixed state `I/D`.
    pub fn maximally_mixed(dims: Dims) -> Self {
        let d = dims.total();
        let w = T::one() / T::from_usize(d).expect("dimension fits scalar");
        Self {
            dims,
            matrix: DMatrix::from_diagonal_element(d, d, creal(w)),
        }
    }
}

impl<T: Real> From<&Ket<T>> for DensityOp<T> {
    fn from(ket: &Ket<T>) -> Self {
        ket.density()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn bell() -> Ket<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let d = Dims::new(vec![2, 2]).unwrap();
        Ket::new(d, vec![creal(h), creal(0.0), creal(0.0), creal(h)]).unwrap()
    }

    #[test]
    fn ket_normalization_is_checked() {
        let d = Dims::new(vec![2]).unwrap();
        assert!(matches!(
            Ket::<f64>::new(d.clone(), vec![creal(1.0), creal(1.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(Ket::<f64>::new(d.clone(), vec![creal(1.0)]).is_err());
        assert!(Ket::<f64>::normalized(d.clone(), vec![creal(0.0), creal(0.0)]).is_err());
        let k = Ket::<f64>::normalized(d, vec![creal(3.0), cplx(0.0, 4.0)]).unwrap();
        assert!((k.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_of_basis_and_bell() {
        let d = Dims::new(vec![2]).unwrap();
        let rho = Ket::<f64>::basis(d, &[0]).unwrap().density();
        assert_eq!(rho.matrix()[(0, 0)], creal(1.0));
        assert_eq!(rho.matrix()[(1, 1)], creal(0.0));
        assert_eq!(rho.matrix()[(0, 1)], creal(0.0));

        let rho = bell().density();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if [0, 3].contains(&i) && [0, 3].contains(&j) {
                    0.5
                } else {
                    0.0
                };
                assert!((rho.matrix()[(i, j)] - creal(expect)).norm() < 1e-15);
            }
        }
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
        assert_eq!(rho.rank(1e-10).unwrap(), 1);
    }

    #[test]
    fn density_validation() {
        let d = Dims::new(vec![2]).unwrap();
        let bad_trace = DMatrix::from_diagonal_element(2, 2, creal(1.0));
        assert!(matches!(
            DensityOp::new(d.clone(), bad_trace),
            Err(Error::InvalidTrace(_))
        ));
        let mut not_herm = DMatrix::from_diagonal_element(2, 2, creal(0.5));
        not_herm[(0, 1)] = creal(0.1);
        assert!(matches!(
            DensityOp::new(d.clone(), not_herm),
            Err(Error::NotHermitian(_))
        ));
        let neg = DMatrix::from_diagonal(&DVector::from_vec(vec![creal(1.5), creal(-0.5)]));
        assert!(matches!(
            DensityOp::new(d.clone(), neg),
            Err(Error::NotPositive(_))
        ));
        let ok = DMatrix::from_diagonal(&DVector::from_vec(vec![creal(0.25), creal(0.75)]));
        assert!(DensityOp::new(d, ok).is_ok());
    }

    #[test]
    fn apply_local_matches_kronecker() {
        let k = bell();
        // X on subsystem 1
        let x = DMatrix::from_row_slice(2, 2, &[creal(0.0), creal(1.0), creal(1.0), creal(0.0)]);
        let out = k.apply_local(1, &x).unwrap();
        let id = DMatrix::<Complex<f64>>::identity(2, 2);
        let expect = id.kronecker(&x) * k.amplitudes();
        assert!((out.amplitudes() - expect).norm() < 1e-15);
        assert!(k.apply_local(2, &x).is_err());
    }

    #[test]
    fn reduced_from_ket_matches_partial_trace() {
        let d = Dims::new(vec![2, 3]).unwrap();
        let terms = vec![
            (vec![0, 0], cplx(0.3, 0.1)),
            (vec![1, 2], cplx(-0.2, 0.5)),
            (vec![1, 0], cplx(0.7, 0.0)),
            (vec![0, 1], cplx(0.0, -0.4)),
        ];
        let k = Ket::<f64>::from_terms(d, &terms).unwrap();
        for keep in [vec![0], vec![1]] {
            let a = k.reduced(&keep).unwrap();
            let b = k.density().partial_trace(&keep).unwrap();
            assert!((a.matrix() - b.matrix()).norm() < 1e-14);
        }
    }
}
