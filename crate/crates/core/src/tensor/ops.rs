use nalgebra::DMatrix;
use num_complex::Complex;

use super::dims::{check_block, Dims};
use super::state::DensityOp;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Traces out every subsystem not in `keep`.
///
/// The result lives on the kept subsystems in ascending index order.
pub fn partial_trace<T: Real>(rho: &DensityOp<T>, keep: &[usize]) -> Result<DensityOp<T>> {
    let dims = &rho.dims;
    let keep = check_block(dims, keep, false)?;
    let kept_dims = dims.select(&keep)?;
    if keep.len() == dims.parties() {
        return Ok(rho.clone());
    }
    let (inner, outer) = dims.split_indices(&keep);
    let dk = kept_dims.total();
    let dr = dims.total() / dk;

    // flat indices grouped by their label on the traced-out part
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(dk); dr];
    for flat in 0..dims.total() {
        groups[outer[flat]].push((flat, inner[flat]));
    }
    let mut out = DMatrix::<Complex<T>>::zeros(dk, dk);
    for group in &groups {
        for &(i, ki) in group {
            for &(j, kj) in group {
                out[(ki, kj)] += rho.matrix[(i, j)];
            }
        }
    }
    Ok(DensityOp::from_parts(kept_dims, out))
}

/// Transposes the indices of the subsystems in `block`:
/// `⟨i j| ρ^{T_S} |k l⟩ = ⟨k j| ρ |i l⟩` with `i, k` labels on `S`.
///
/// The result is Hermitian but need not be positive, so it is returned as a
/// bare matrix.
pub fn partial_transpose<T: Real>(
    rho: &DensityOp<T>,
    block: &[usize],
) -> Result<DMatrix<Complex<T>>> {
    partial_transpose_matrix(&rho.dims, &rho.matrix, block)
}

/// [`partial_transpose`] on any square operator over `dims`.
pub fn partial_transpose_matrix<T: Real>(
    dims: &Dims,
    m: &DMatrix<Complex<T>>,
    block: &[usize],
) -> Result<DMatrix<Complex<T>>> {
    let block = check_block(dims, block, false)?;
    let d = dims.total();
    if m.shape() != (d, d) {
        return Err(Error::LengthMismatch {
            expected: d,
            got: m.nrows(),
        });
    }
    let offs = dims.block_offsets(&block);
    let mut out = DMatrix::<Complex<T>>::zeros(d, d);
    for j in 0..d {
        for i in 0..d {
            let row = i - offs[i] + offs[j];
            let col = j - offs[j] + offs[i];
            out[(row, col)] = m[(i, j)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::creal;
    use crate::tensor::{hermitian_eigenvalues, random, Dims, Ket};

    fn bell() -> Ket<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Ket::new(
            Dims::new(vec![2, 2]).unwrap(),
            vec![creal(h), creal(0.0), creal(0.0), creal(h)],
        )
        .unwrap()
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let r = partial_trace(&bell().density(), &[0]).unwrap();
        let expect = DMatrix::from_diagonal_element(2, 2, creal(0.5));
        assert!((r.matrix() - expect).norm() < 1e-15);
        assert_eq!(r.dims().as_slice(), &[2]);
    }

    #[test]
    fn product_marginal() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let d1 = Dims::new(vec![2]).unwrap();
        let zero = Ket::<f64>::basis(d1.clone(), &[0]).unwrap();
        let plus = Ket::new(d1, vec![creal(h), creal(h)]).unwrap();
        let r = partial_trace(&zero.tensor(&plus).density(), &[1]).unwrap();
        assert!((r.matrix() - plus.density().matrix()).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_keep() {
        let rho = bell().density();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert_eq!(partial_trace(&rho, &[0, 1]).unwrap(), rho);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(&bell().density(), &[0]).unwrap();
        let eig = hermitian_eigenvalues(&pt);
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((min + 0.5).abs() < 1e-12);
        let mut sorted = eig.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (x, e) in sorted.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_of_product_is_psd_and_factorizes() {
        let a = random::random_density::<f64>(&Dims::new(vec![2]).unwrap(), 2, 11).unwrap();
        let b = random::random_density::<f64>(&Dims::new(vec![3]).unwrap(), 3, 12).unwrap();
        let pt = partial_transpose(&a.tensor(&b), &[0]).unwrap();
        let expect = a.matrix().transpose().kronecker(b.matrix());
        assert!((&pt - expect).norm() < 1e-14);
        assert!(hermitian_eigenvalues(&pt).iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn identity_is_fixed_point() {
        let d = Dims::new(vec![2, 3, 2]).unwrap();
        let rho = DensityOp::<f64>::maximally_mixed(d);
        for block in [vec![0], vec![1], vec![0, 2], vec![0, 1, 2]] {
            assert_eq!(&partial_transpose(&rho, &block).unwrap(), rho.matrix());
        }
    }

    #[test]
    fn full_transpose_on_all_subsystems() {
        let d = Dims::new(vec![2, 3]).unwrap();
        let rho = random::random_density::<f64>(&d, 3, 5).unwrap();
        let pt = partial_transpose(&rho, &[0, 1]).unwrap();
        assert_eq!(pt, rho.matrix().transpose());
    }
}
