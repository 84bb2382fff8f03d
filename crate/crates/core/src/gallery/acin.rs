//! Three-qubit generalized Schmidt form
//! `l₀|000⟩ + l₁e^{iθ}|100⟩ + l₂|101⟩ + l₃|110⟩ + l₄|111⟩`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::{cplx, creal, Real};
use crate::tensor::{Dims, Ket};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcinParams<T> {
    l: [T; 5],
    theta: T,
}

impl<T: Real> AcinParams<T> {
    /// `l_i ≥ 0` with `Σ l_i² = 1`, and `θ ∈ [0, π)`.
    pub fn new(l: [T; 5], theta: T) -> Result<Self> {
        Self::check(&l, theta)?;
        let norm2 = l.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if (norm2 - T::one()).abs() > T::linalg_tol() {
            return Err(Error::NotNormalized(norm2.sqrt().as_f64()));
        }
        Ok(Self { l, theta })
    }

    /// Rescales `l` to unit norm.
    pub fn normalized(l: [T; 5], theta: T) -> Result<Self> {
        Self::check(&l, theta)?;
        let norm = l.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        if !(norm > T::zero()) {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(Self {
            l: l.map(|x| x / norm),
            theta,
        })
    }

    fn check(l: &[T; 5], theta: T) -> Result<()> {
        if l.iter().any(|&x| !(x >= T::zero())) {
            return Err(Error::InvalidParameter("l_i must be non-negative".into()));
        }
        if !(theta >= T::zero() && theta < T::pi()) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, pi), got {}",
                theta.as_f64()
            )));
        }
        Ok(())
    }

    /// Random draw: `|gaussian|` magnitudes, uniform phase.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let l = [(); 5].map(|_| T::lit(rng.sample::<f64, _>(StandardNormal).abs()));
            let theta = T::lit(rng.random::<f64>() * std::f64::consts::PI);
            if let Ok(p) = Self::normalized(l, theta) {
                return p;
            }
        }
    }

    pub fn l(&self) -> [T; 5] {
        self.l
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// `Δ_A = l₀²(l₂² + l₃² + l₄²)`, the determinant of ρ_A. The `|000⟩` and
    /// `|100⟩` terms share the BC label, so ρ_A is diagonal only when `l₁ = 0`.
    pub fn delta_a(&self) -> T {
        let [l0, _, l2, l3, l4] = self.l;
        l0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4)
    }

    /// `Δ₀ = l₀²l₃² + l₀²l₄² + l₁²l₄² + l₂²l₃² − 2 l₁l₂l₃l₄ cos θ`, the
    /// determinant of ρ_B.
    pub fn delta0(&self) -> T {
        let [l0, l1, l2, l3, l4] = self.l;
        let two = T::lit(2.0);
        l0 * l0 * l3 * l3 + l0 * l0 * l4 * l4 + l1 * l1 * l4 * l4 + l2 * l2 * l3 * l3
            - two * l1 * l2 * l3 * l4 * self.theta.cos()
    }

    /// `Δ₁ = l₀²l₂² + l₀²l₄² + l₁²l₄² + l₂²l₃² − 2 l₁l₂l₃l₄ cos θ`, the
    /// determinant of ρ_C.
    pub fn delta1(&self) -> T {
        let [l0, l1, l2, l3, l4] = self.l;
        let two = T::lit(2.0);
        l0 * l0 * l2 * l2 + l0 * l0 * l4 * l4 + l1 * l1 * l4 * l4 + l2 * l2 * l3 * l3
            - two * l1 * l2 * l3 * l4 * self.theta.cos()
    }
}

pub fn acin_state<T: Real>(params: &AcinParams<T>) -> Ket<T> {
    let [l0, l1, l2, l3, l4] = params.l;
    let dims = Dims::new(vec![2, 2, 2]).expect("three qubits");
    let mut amps = vec![creal(T::zero()); 8];
    amps[0b000] = creal(l0);
    amps[0b100] = cplx(l1 * params.theta.cos(), l1 * params.theta.sin());
    amps[0b101] = creal(l2);
    amps[0b110] = creal(l3);
    amps[0b111] = creal(l4);
    Ket::new(dims, amps).expect("unit-norm parameters give a unit-norm ket")
}

fn pair_from_det<T: Real>(delta: T) -> Result<[T; 2]> {
    let disc = T::one() - T::lit(4.0) * delta;
    if disc < -T::spectrum_clamp() {
        return Err(Error::Numerical(format!(
            "1 - 4Δ = {} is negative",
            disc.as_f64()
        )));
    }
    let root = if disc > T::zero() {
        disc.sqrt()
    } else {
        T::zero()
    };
    let half = T::lit(0.5);
    Ok([(T::one() + root) * half, (T::one() - root) * half])
}

/// Descending Schmidt pairs `(1 ± √(1 − 4Δ))/2` for the cuts A|BC, B|AC and
/// C|AB, with `Δ` the determinant of the one-qubit marginal.
pub fn acin_schmidt_spectra<T: Real>(params: &AcinParams<T>) -> Result<[[T; 2]; 3]> {
    Ok([
        pair_from_det(params.delta_a())?,
        pair_from_det(params.delta0())?,
        pair_from_det(params.delta1())?,
    ])
}

/// Cuts across which an Acín-form state factorizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SeparableCuts {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl SeparableCuts {
    pub fn is_empty(&self) -> bool {
        !(self.a || self.b || self.c)
    }

    /// Separable parties as 0-based indices.
    pub fn parties(&self) -> Vec<usize> {
        [self.a, self.b, self.c]
            .iter()
            .enumerate()
            .filter_map(|(k, &s)| s.then_some(k))
            .collect()
    }
}

/// A cut is separable iff the determinant of that qubit's marginal vanishes
/// (up to `tol`): `Δ_A` for A|BC (zero when `l₀ ∈ {0, 1}`), `Δ₀` for B|AC,
/// `Δ₁` for C|AB.
pub fn acin_separable_cuts<T: Real>(params: &AcinParams<T>, tol: T) -> SeparableCuts {
    SeparableCuts {
        a: params.delta_a() <= tol,
        b: params.delta0() <= tol,
        c: params.delta1() <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random::rng_from_seed, reduced_spectrum};

    #[test]
    fn basis_and_ghz() {
        let p = AcinParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        let k = acin_state(&p);
        assert_eq!(k.amplitude(&[0, 0, 0]).unwrap(), creal(1.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = AcinParams::new([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
        let k = acin_state(&ghz);
        assert!((k.amplitude(&[1, 1, 1]).unwrap().re - h).abs() < 1e-15);
        assert!((ghz.delta0() - 0.25).abs() < 1e-15);
        assert!((ghz.delta1() - 0.25).abs() < 1e-15);
        for pair in acin_schmidt_spectra(&ghz).unwrap() {
            assert!((pair[0] - 0.5).abs() < 1e-12 && (pair[1] - 0.5).abs() < 1e-12);
        }
        assert!(acin_separable_cuts(&ghz, 1e-9).is_empty());
    }

    #[test]
    fn validation() {
        assert!(AcinParams::new([0.5, 0.5, 0.5, 0.0, 0.0], 0.0).is_err());
        assert!(AcinParams::new([1.0, 0.0, 0.0, 0.0, 0.0], std::f64::consts::PI).is_err());
        assert!(AcinParams::normalized([-1.0, 0.0, 0.0, 0.0, 1.0], 0.0).is_err());
        assert!(AcinParams::normalized([0.0; 5], 0.0).is_err());
    }

    #[test]
    fn b_separable_when_l3_l4_vanish() {
        let p = AcinParams::normalized([0.6, 0.5, 0.4, 0.0, 0.0], 1.0).unwrap();
        assert_eq!(p.delta0(), 0.0);
        let spectra = acin_schmidt_spectra(&p).unwrap();
        assert_eq!(spectra[1], [1.0, 0.0]);
        let cuts = acin_separable_cuts(&p, 1e-9);
        assert!(cuts.b && !cuts.a && !cuts.c);
        assert_eq!(cuts.parties(), vec![1]);
    }

    #[test]
    fn a_cut_pair_with_and_without_l1() {
        // l₁ = 0: ρ_A is diagonal and the pair is (l₀², 1 − l₀²)
        let p = AcinParams::<f64>::normalized([0.6, 0.0, 0.5, 0.4, 0.3], 0.7).unwrap();
        let pair = acin_schmidt_spectra(&p).unwrap()[0];
        let l0sq = p.l()[0].powi(2);
        assert!((pair[1] - l0sq.min(1.0 - l0sq)).abs() < 1e-12);
        // l₂ = l₃ = l₄ = 0 is a product state although 0 < l₀ < 1
        let p = AcinParams::<f64>::normalized([0.6, 0.8, 0.0, 0.0, 0.0], 0.3).unwrap();
        assert!(p.delta_a().abs() < 1e-15);
        let cuts = acin_separable_cuts(&p, 1e-9);
        assert!(cuts.a && cuts.b && cuts.c);
    }

    #[test]
    fn a_separable_when_l0_vanishes() {
        let p = AcinParams::normalized([0.0, 0.3, 0.5, 0.2, 0.7], 2.0).unwrap();
        assert!(acin_separable_cuts(&p, 1e-9).a);
    }

    #[test]
    fn delta0_sum_of_squares_identity() {
        let mut rng = rng_from_seed(5);
        for _ in 0..200 {
            let p = AcinParams::<f64>::random(&mut rng);
            let [l0, l1, l2, l3, l4] = p.l();
            let alt = l0 * l0 * (l3 * l3 + l4 * l4)
                + (l1 * l4 - l2 * l3).powi(2)
                + 4.0 * l1 * l2 * l3 * l4 * (p.theta() / 2.0).sin().powi(2);
            assert!((p.delta0() - alt).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_matches_numeric_spectra() {
        let mut rng = rng_from_seed(6);
        for _ in 0..200 {
            let p = AcinParams::<f64>::random(&mut rng);
            let k = acin_state(&p);
            let closed = acin_schmidt_spectra(&p).unwrap();
            for (party, pair) in closed.iter().enumerate() {
                let numeric = reduced_spectrum(&k, &[party]).unwrap();
                assert!(
                    (numeric[0] - pair[0]).abs() < 1e-10,
                    "{p:?} party {party}: {numeric:?} vs {pair:?}"
                );
                assert!((numeric[1] - pair[1]).abs() < 1e-10);
            }
        }
    }
}
