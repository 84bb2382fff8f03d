//! Purifications `Σ_{ij} √(a_i b_j) |i j⟩_{AB} |ij⟩_C` of product states
//! `diag(a) ⊗ diag(b)`. With both ranks at least two these violate the
//! negativity polygon inequality at the purifying party.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::tensor::random::random_simplex;
use crate::tensor::{Dims, Ket};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductPurificationSpec<T> {
    a: Vec<T>,
    b: Vec<T>,
}

impl<T: Real> ProductPurificationSpec<T> {
    /// Both spectra need at least two entries, non-negative, summing to one.
    pub fn new(a: Vec<T>, b: Vec<T>) -> Result<Self> {
        check_probabilities(&a, "a")?;
        check_probabilities(&b, "b")?;
        Ok(Self { a, b })
    }

    /// Uniformly random spectra of the given lengths (full rank with probability one).
    pub fn random<R: Rng + ?Sized>(da: usize, db: usize, rng: &mut R) -> Result<Self> {
        Self::new(random_simplex(rng, da), random_simplex(rng, db))
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// `[d_a, d_b, d_a·d_b]`.
    pub fn dims(&self) -> Dims {
        let (da, db) = (self.a.len(), self.b.len());
        Dims::new(vec![da, db, da * db]).expect("spectra have >= 2 entries")
    }
}

fn check_probabilities<T: Real>(p: &[T], name: &str) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "spectrum {name} needs at least 2 entries"
        )));
    }
    if p.iter().any(|&x| !(x >= T::zero())) {
        return Err(Error::InvalidParameter(format!(
            "spectrum {name} has a negative entry"
        )));
    }
    let s = p.iter().fold(T::zero(), |acc, &x| acc + x);
    if (s - T::one()).abs() > T::linalg_tol() {
        return Err(Error::InvalidParameter(format!(
            "spectrum {name} sums to {}",
            s.as_f64()
        )));
    }
    Ok(())
}

/// The purification, with `C` a single party of dimension `d_a·d_b` whose
/// label for `(i, j)` is `i·d_b + j`.
pub fn product_purification<T: Real>(spec: &ProductPurificationSpec<T>) -> Ket<T> {
    let dims = spec.dims();
    let db = spec.b.len();
    let mut amps = vec![creal(T::zero()); dims.total()];
    for (i, &ai) in spec.a.iter().enumerate() {
        for (j, &bj) in spec.b.iter().enumerate() {
            let flat = dims
                .flat_index(&[i, j, i * db + j])
                .expect("label in range");
            amps[flat] = creal((ai * bj).sqrt());
        }
    }
    Ket::normalized(dims, amps).expect("probability spectra")
}

/// `N_{C|AB} − N_{A|BC} − N_{B|AC} = ½ (1 − (Σ√a_i)²)(1 − (Σ√b_j)²)`.
pub fn negativity_gap_closed<T: Real>(spec: &ProductPurificationSpec<T>) -> T {
    let sa = spec.a.iter().fold(T::zero(), |acc, &x| acc + x.sqrt());
    let sb = spec.b.iter().fold(T::zero(), |acc, &x| acc + x.sqrt());
    T::lit(0.5) * (T::one() - sa * sa) * (T::one() - sb * sb)
}
