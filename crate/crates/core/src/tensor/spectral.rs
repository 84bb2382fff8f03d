use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex;

use super::dims::check_block;
use super::state::Ket;
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};

/// Exponent of a Schatten norm. `Infinity` is the operator norm, not a
/// large-p approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenP<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> SchattenP<T> {
    /// `p ≥ 1`; `+∞` maps to [`SchattenP::Infinity`].
    pub fn new(p: T) -> Result<Self> {
        if p.is_finite() {
            if p >= T::one() {
                Ok(Self::Finite(p))
            } else {
                Err(Error::InvalidParameter(format!(
                    "Schatten exponent must be >= 1, got {}",
                    p.as_f64()
                )))
            }
        } else if p > T::zero() {
            Ok(Self::Infinity)
        } else {
            Err(Error::InvalidParameter(
                "Schatten exponent is NaN or -inf".into(),
            ))
        }
    }
}

pub(crate) fn hermitian_deviation<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    let mut dev = T::zero();
    for j in 0..m.ncols() {
        for i in 0..=j.min(m.nrows().saturating_sub(1)) {
            let d = (m[(i, j)] - m[(j, i)].conj()).modulus();
            if d > dev {
                dev = d;
            }
        }
    }
    dev
}

/// Eigenvalues of `(M + M†)/2`, unsorted.
///
/// Rows and columns that are exactly zero are split off first: each carries
/// an exact eigenvalue 0, and the implicit-QR solver can return NaN on
/// matrices with many of them (partial transposes of structured states are
/// typically like that). Should the solver still produce a non-finite value,
/// the spectrum is recomputed with cyclic Jacobi rotations.
pub fn hermitian_eigenvalues<T: Real>(m: &DMatrix<Complex<T>>) -> Vec<T> {
    let half = creal(T::lit(0.5));
    let h = (m + m.adjoint()) * half;
    let n = h.nrows();
    let active: Vec<usize> = (0..n)
        .filter(|&i| {
            h.row(i)
                .iter()
                .any(|z| z.re != T::zero() || z.im != T::zero())
        })
        .collect();
    let mut eig = vec![T::zero(); n - active.len()];
    if active.is_empty() {
        return eig;
    }
    let h = if active.len() == n {
        h
    } else {
        DMatrix::from_fn(active.len(), active.len(), |i, j| h[(active[i], active[j])])
    };
    let values: Vec<T> = SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    if values.iter().all(|x| x.is_finite()) {
        eig.extend(values);
    } else {
        eig.extend(jacobi_eigenvalues(&h));
    }
    eig
}

/// Hermitian eigenvalues through the real symmetric embedding
/// `[[Re H, −Im H], [Im H, Re H]]`, whose spectrum is that of `H` with every
/// value doubled.
fn jacobi_eigenvalues<T: Real>(h: &DMatrix<Complex<T>>) -> Vec<T> {
    let n = h.nrows();
    let mut a = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let m = 2 * n;
    let eps = T::default_epsilon();
    for _sweep in 0..100 {
        let off: T = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[(i, j)] * a[(i, j)]);
        if off <= eps * eps * a.norm_squared() {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let tau = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = tau.signum() / (tau.abs() + (T::one() + tau * tau).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..m {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<T> = (0..m).map(|i| a[(i, i)]).collect();
    d.sort_by(|x, y| y.partial_cmp(x).expect("finite Jacobi eigenvalues"));
    d.into_iter().step_by(2).collect()
}

/// Clamps roundoff negatives in `[-clamp, 0)` to zero and sorts descending.
/// Anything more negative is reported as [`Error::NotPositive`], non-finite
/// values as [`Error::Numerical`].
pub fn clean_spectrum<T: Real>(mut eig: Vec<T>) -> Result<Vec<T>> {
    let clamp = T::spectrum_clamp();
    if eig.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite eigenvalue".into()));
    }
    for x in eig.iter_mut() {
        if *x < T::zero() {
            if *x < -clamp {
                return Err(Error::NotPositive(x.as_f64()));
            }
            *x = T::zero();
        }
    }
    eig.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(eig)
}

/// Zeroes Schmidt values below the linear-algebra tolerance and rescales the
/// rest to sum to one.
pub(crate) fn schmidt_cleanup<T: Real>(spec: &mut [T]) {
    let tol = T::linalg_tol();
    let mut sum = T::zero();
    for x in spec.iter_mut() {
        if *x < tol {
            *x = T::zero();
        }
        sum += *x;
    }
    if sum > T::zero() {
        spec.iter_mut().for_each(|x| *x /= sum);
    }
}

/// Squared Schmidt coefficients of `psi` across `block | rest`, descending.
///
/// These are the eigenvalues of the reduced state on `block`; the list has
/// length `dim(block)` and is zero-padded where the Schmidt rank is smaller.
pub fn reduced_spectrum<T: Real>(psi: &Ket<T>, block: &[usize]) -> Result<Vec<T>> {
    let block = check_block(psi.dims(), block, true)?;
    let rho = psi.reduced(&block)?;
    let mut spec = clean_spectrum(hermitian_eigenvalues(rho.matrix()))?;
    schmidt_cleanup(&mut spec);
    Ok(spec)
}

/// `(Σ s_i^p)^{1/p}` over already-computed non-negative singular values.
pub fn schatten_norm_of_values<T: Real>(values: &[T], p: SchattenP<T>) -> T {
    let max = values
        .iter()
        .copied()
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    match p {
        SchattenP::Infinity => max,
        _ if max == T::zero() => T::zero(),
        SchattenP::Finite(p) if p == T::one() => {
            values.iter().copied().fold(T::zero(), |a, b| a + b)
        }
        SchattenP::Finite(p) => {
            // scaled by the largest value to keep s^p in range
            let sum = values
                .iter()
                .fold(T::zero(), |acc, &s| acc + (s / max).powf(p));
            max * sum.powf(T::one() / p)
        }
    }
}

/// Schatten p-norm from the singular values of `m`.
pub fn schatten_norm<T: Real>(m: &DMatrix<Complex<T>>, p: SchattenP<T>) -> T {
    let sv = m.clone().svd(false, false).singular_values;
    schatten_norm_of_values(sv.as_slice(), p)
}
