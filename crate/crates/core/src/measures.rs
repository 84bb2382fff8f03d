//! Bipartite entanglement measures.
//!
//! Pure-state measures are functions of the Schmidt spectrum across a cut
//! `block | rest`. Negativity additionally has a trace-norm route that works
//! on any density operator, and two-qubit mixed states get the Wootters
//! concurrence.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real};
use crate::tensor::{check_block, hermitian_eigenvalues, reduced_spectrum, DensityOp, Ket};
use crate::tol;

/// Selectable one-to-rest measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure<T> {
    /// Geometric entanglement `G = 1 − λ₀`.
    Gem,
    /// `N = (‖ρ^{T_S}‖₁ − 1)/2`.
    Negativity,
    /// `C = √(2(1 − Tr ρ_S²))`.
    Concurrence,
    /// `C_q = 1 − Tr ρ_S^q`, `q ≥ 1`.
    QConcurrence(T),
}

impl<T: Real> Measure<T> {
    pub fn q_concurrence(q: T) -> Result<Self> {
        check_q(q)?;
        Ok(Self::QConcurrence(q))
    }

    /// Parses `gem`, `negativity`, `concurrence` or `qconcurrence` (which needs `q`).
    pub fn parse(name: &str, q: Option<T>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "gem" | "g" | "geometric" => Ok(Self::Gem),
            "negativity" | "n" => Ok(Self::Negativity),
            "concurrence" | "c" => Ok(Self::Concurrence),
            "qconcurrence" | "q-concurrence" | "cq" => {
                let q = q.ok_or_else(|| Error::InvalidParameter("q-concurrence needs q".into()))?;
                Self::q_concurrence(q)
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown measure {other:?}"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gem => "gem",
            Self::Negativity => "negativity",
            Self::Concurrence => "concurrence",
            Self::QConcurrence(_) => "qconcurrence",
        }
    }

    /// Value on a pure state with squared Schmidt coefficients `spec`
    /// (non-negative, summing to one).
    pub fn of_spectrum(&self, spec: &[T]) -> T {
        match *self {
            Self::Gem => gem_from_spectrum(spec),
            Self::Negativity => negativity_from_spectrum(spec),
            Self::Concurrence => concurrence_from_spectrum(spec),
            Self::QConcurrence(q) => q_concurrence_from_spectrum(spec, q),
        }
    }

    /// Value on `psi` across `block | rest`.
    pub fn of_ket(&self, psi: &Ket<T>, block: &[usize]) -> Result<T> {
        Ok(self.of_spectrum(&reduced_spectrum(psi, block)?))
    }
}

impl<T: Real> fmt::Display for Measure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::QConcurrence(q) => write!(f, "qconcurrence(q={})", q.as_f64()),
            m => f.write_str(m.name()),
        }
    }
}

fn check_q<T: Real>(q: T) -> Result<()> {
    if q >= T::one() && q.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "q must be >= 1, got {}",
            q.as_f64()
        )))
    }
}

fn nonneg<T: Real>(x: T) -> T {
    if x > T::zero() {
        x
    } else {
        T::zero()
    }
}

pub(crate) fn gem_from_spectrum<T: Real>(spec: &[T]) -> T {
    // 1 − λ₀ summed from the tail, exact zero for a single non-zero value
    let (max_i, _) =
        spec.iter().enumerate().fold(
            (0, T::zero()),
            |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) },
        );
    let tail = spec
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != max_i)
        .fold(T::zero(), |acc, (_, &v)| acc + v);
    nonneg(tail)
}

pub(crate) fn negativity_from_spectrum<T: Real>(spec: &[T]) -> T {
    let s = spec
        .iter()
        .fold(T::zero(), |acc, &l| acc + nonneg(l).sqrt());
    nonneg((s * s - T::one()) * T::lit(0.5))
}

pub(crate) fn q_concurrence_from_spectrum<T: Real>(spec: &[T], q: T) -> T {
    let p = spec
        .iter()
        .fold(T::zero(), |acc, &l| acc + nonneg(l).powf(q));
    nonneg(T::one() - p)
}

pub(crate) fn concurrence_from_spectrum<T: Real>(spec: &[T]) -> T {
    (T::lit(2.0) * q_concurrence_from_spectrum(spec, T::lit(2.0))).sqrt()
}

/// Geometric entanglement of a pure state across `block | rest`: `1 − λ₀`.
pub fn gem_pure<T: Real>(psi: &Ket<T>, block: &[usize]) -> Result<T> {
    Measure::Gem.of_ket(psi, block)
}

/// Negativity from the trace norm of the partial transpose on `block`.
pub fn negativity<T: Real>(rho: &DensityOp<T>, block: &[usize]) -> Result<T> {
    let block = check_block(rho.dims(), block, true)?;
    let pt = rho.partial_transpose(&block)?;
    let trace_norm = hermitian_eigenvalues(&pt)
        .into_iter()
        .fold(T::zero(), |acc, x| acc + x.abs());
    if !trace_norm.is_finite() {
        return Err(Error::Numerical("non-finite trace norm".into()));
    }
    Ok(nonneg((trace_norm - T::one()) * T::lit(0.5)))
}

/// Trace-norm negativity of `|ψ⟩⟨ψ|`.
pub fn negativity_ket<T: Real>(psi: &Ket<T>, block: &[usize]) -> Result<T> {
    negativity(&psi.density(), block)
}

/// Negativity of a pure state from its Schmidt spectrum, `((Σ√λ)² − 1)/2`.
pub fn negativity_pure_schmidt<T: Real>(psi: &Ket<T>, block: &[usize]) -> Result<T> {
    Measure::Negativity.of_ket(psi, block)
}

pub fn concurrence_pure<T: Real>(psi: &Ket<T>, block: &[usize]) -> Result<T> {
    Measure::Concurrence.of_ket(psi, block)
}

pub fn q_concurrence<T: Real>(psi: &Ket<T>, block: &[usize], q: T) -> Result<T> {
    Measure::q_concurrence(q)?.of_ket(psi, block)
}

/// `σ_y ⊗ σ_y` in the computational basis.
fn spin_flip<T: Real>() -> DMatrix<Complex<T>> {
    let (o, z) = (creal(T::one()), creal(T::zero()));
    DMatrix::from_row_slice(4, 4, &[z, z, z, -o, z, z, o, z, z, o, z, z, -o, z, z, z])
}

/// Eigenvalues `μ₁ ≥ … ≥ μ₄` of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn wootters_eigenvalues<T: Real>(rho: &DensityOp<T>) -> Result<[T; 4]> {
    if rho.dims().as_slice() != [2, 2] {
        return Err(Error::InvalidParameter(format!(
            "Wootters concurrence needs a two-qubit state, got dims {:?}",
            rho.dims().as_slice()
        )));
    }
    let yy = spin_flip::<T>();
    let m = rho.matrix();
    let r = m * &yy * m.map(|z| z.conj()) * &yy;
    let schur = r
        .try_schur(T::default_epsilon(), 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("Schur form not triangular".into()))?;
    let imag_tol = T::lit(tol::WOOTTERS_IMAG);
    let mut mu = [T::zero(); 4];
    for (slot, z) in mu.iter_mut().zip(eig.iter()) {
        if z.im.abs() > imag_tol {
            return Err(Error::Numerical(format!(
                "Wootters eigenvalue has imaginary part {:e}",
                z.im.as_f64()
            )));
        }
        *slot = nonneg(z.re);
    }
    mu.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    // exact zeros come back as O(ε) and √ would inflate them to O(√ε)
    let floor = T::lit(64.0) * T::default_epsilon() * mu[0];
    for m in mu.iter_mut() {
        if *m < floor {
            *m = T::zero();
        }
    }
    Ok(mu)
}

/// Two-qubit concurrence `max(√μ₁ − √μ₂ − √μ₃ − √μ₄, 0)`.
pub fn wootters_concurrence<T: Real>(rho: &DensityOp<T>) -> Result<T> {
    let mu = wootters_eigenvalues(rho)?;
    let s = mu.map(|m| m.sqrt());
    Ok(nonneg(s[0] - s[1] - s[2] - s[3]))
}
