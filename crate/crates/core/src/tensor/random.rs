//! Seeded random states.
//!
//! Every generator takes an explicit seed; audits derive per-trial seeds
//! with [`derive_seed`] so results do not depend on execution order.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use super::dims::Dims;
use super::state::{DensityOp, Ket};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `trial` of a run with master seed `master`.
pub fn derive_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial.wrapping_add(0x5851_f42d_4c95_7f2d)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` i.i.d. standard complex Gaussians. Sampled in f64 so every scalar
/// type sees the same draw.
pub fn gaussian_vec<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Uniform point on the probability simplex with `n` entries.
pub fn random_simplex<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    let e: Vec<f64> = (0..n).map(|_| rng.sample(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| T::lit(x / s)).collect()
}

pub fn haar_random_ket_with<T: Real, R: Rng + ?Sized>(dims: &Dims, rng: &mut R) -> Ket<T> {
    loop {
        // a zero vector has probability zero, but don't divide by it
        if let Ok(k) = Ket::normalized(dims.clone(), gaussian_vec(rng, dims.total())) {
            return k;
        }
    }
}

/// Haar-distributed pure state, deterministic in `seed`.
pub fn haar_random_ket<T: Real>(dims: &Dims, seed: u64) -> Ket<T> {
    haar_random_ket_with(dims, &mut rng_from_seed(seed))
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix on R).
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex<T>> {
    let g = DMatrix::from_vec(d, d, gaussian_vec::<T, _>(rng, d * d));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = rjj.modulus();
        if n > T::zero() {
            let phase = rjj / Complex::new(n, T::zero());
            for i in 0..d {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Random state of the given rank: the reduced state of a Haar-random
/// purification on `D × rank`.
pub fn random_density_with<T: Real, R: Rng + ?Sized>(
    dims: &Dims,
    rank: usize,
    rng: &mut R,
) -> Result<DensityOp<T>> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::InvalidParameter(format!(
            "rank must be in 1..={d}, got {rank}"
        )));
    }
    let g = DMatrix::from_vec(d, rank, gaussian_vec::<T, _>(rng, d * rank));
    let mut m = &g * g.adjoint();
    let tr = m.trace().re;
    m.unscale_mut(tr);
    // enforce exact Hermiticity of the product
    let m = (&m + m.adjoint()) * Complex::new(T::lit(0.5), T::zero());
    Ok(DensityOp::from_parts(dims.clone(), m))
}

pub fn random_density<T: Real>(dims: &Dims, rank: usize, seed: u64) -> Result<DensityOp<T>> {
    random_density_with(dims, rank, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::reduced_spectrum;

    #[test]
    fn haar_ket_is_normalized_and_deterministic() {
        let d = Dims::new(vec![2]).unwrap();
        let a = haar_random_ket::<f64>(&d, 42);
        let b = haar_random_ket::<f64>(&d, 42);
        let c = haar_random_ket::<f64>(&d, 43);
        assert!((a.norm() - 1.0).abs() < 1e-14);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|t| derive_seed(7, t)).collect();
        assert_eq!(s.len(), 1000);
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }

    #[test]
    fn mean_largest_marginal_eigenvalue_two_qubits() {
        // For Haar states on C2 ⊗ C2, x = λ_max has density ∝ (2x − 1)² on
        // [1/2, 1], so E[x] = (7/48) / (1/6) = 7/8.
        let d = Dims::new(vec![2, 2]).unwrap();
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|t| {
                reduced_spectrum(&haar_random_ket::<f64>(&d, derive_seed(2024, t)), &[0]).unwrap()
                    [0]
            })
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.875).abs() < 0.02, "mean λ_max = {mean}");
    }

    #[test]
    fn random_density_rank_and_purity() {
        let d = Dims::new(vec![2, 2]).unwrap();
        let pure = random_density::<f64>(&d, 1, 3).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-12);
        assert_eq!(pure.rank(1e-10).unwrap(), 1);
        let full = random_density::<f64>(&d, 4, 3).unwrap();
        assert_eq!(full.rank(1e-10).unwrap(), 4);
        for seed in 0..50 {
            for rank in 1..=4 {
                let r = random_density::<f64>(&d, rank, seed).unwrap();
                let p = r.purity();
                assert!(p > 0.0 && p <= 1.0 + 1e-12);
                assert!((r.trace() - 1.0).abs() < 1e-12);
                DensityOp::new(d.clone(), r.matrix().clone()).unwrap();
            }
        }
        assert!(random_density::<f64>(&d, 0, 1).is_err());
        assert!(random_density::<f64>(&d, 5, 1).is_err());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = rng_from_seed(9);
        let u = haar_unitary::<f64, _>(4, &mut rng);
        let id = DMatrix::<Complex<f64>>::identity(4, 4);
        assert!((u.adjoint() * &u - id).norm() < 1e-12);
    }
}
