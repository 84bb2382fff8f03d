//! Entanglement polygon inequality residuals.
//!
//! For one-to-rest values `E_1 … E_k` of a partition and an exponent `α`,
//! the residual at block `j` is `r_j = Σ_{k≠j} E_k^α − E_j^α`. The
//! inequality holds when every residual is `≥ −tolerance`.

mod audit;

pub use audit::{audit_random, audit_trial, sample_state, AuditConfig, AuditSummary, Sampler};

use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::scalar::Real;
use crate::tensor::{Ket, Partition};
use crate::tol;

/// Exponent applied to measure values, normally in `(0, 1]`.
///
/// Values above one are only constructible through [`Alpha::unproven`] and
/// are flagged in every report that uses them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha<T> {
    value: T,
    unproven: bool,
}

impl<T: Real> Alpha<T> {
    pub fn new(value: T) -> Result<Self> {
        if value > T::zero() && value <= T::one() {
            Ok(Self {
                value,
                unproven: false,
            })
        } else {
            Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1], got {}",
                value.as_f64()
            )))
        }
    }

    /// Any finite `α > 0`; `α > 1` is marked as outside the proven regime.
    pub fn unproven(value: T) -> Result<Self> {
        if value > T::zero() && value.is_finite() {
            Ok(Self {
                value,
                unproven: value > T::one(),
            })
        } else {
            Err(Error::InvalidParameter(format!(
                "alpha must be positive, got {}",
                value.as_f64()
            )))
        }
    }

    pub fn one() -> Self {
        Self {
            value: T::one(),
            unproven: false,
        }
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn is_unproven(&self) -> bool {
        self.unproven
    }
}

/// Ordered list of exponents for a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid<T> {
    points: Vec<Alpha<T>>,
}

impl<T: Real> AlphaGrid<T> {
    /// `steps` evenly spaced points from `min` to `max` inclusive
    /// (`steps == 1` gives just `min`).
    pub fn linspace(min: T, max: T, steps: usize, allow_unproven: bool) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParameter(
                "alpha grid needs at least one step".into(),
            ));
        }
        if max < min {
            return Err(Error::InvalidParameter(
                "alpha grid max is below min".into(),
            ));
        }
        let pts = (0..steps).map(|i| {
            if steps == 1 {
                min
            } else {
                let t = T::from_usize(i).unwrap() / T::from_usize(steps - 1).unwrap();
                min + (max - min) * t
            }
        });
        Self::from_points(pts.collect(), allow_unproven)
    }

    pub fn from_points(points: Vec<T>, allow_unproven: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty alpha grid".into()));
        }
        let points = points
            .into_iter()
            .map(|a| {
                if allow_unproven {
                    Alpha::unproven(a)
                } else {
                    Alpha::new(a)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Alpha<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn any_unproven(&self) -> bool {
        self.points.iter().any(Alpha::is_unproven)
    }
}

/// `v^α` with `0^α = 0`.
pub fn alpha_power<T: Real>(v: T, alpha: T) -> T {
    if v > T::zero() {
        v.powf(alpha)
    } else {
        T::zero()
    }
}

/// One-to-rest values `E(P_j | rest)` in block order.
pub fn one_to_rest_values<T: Real>(
    psi: &Ket<T>,
    partition: &Partition,
    measure: &Measure<T>,
) -> Result<Vec<T>> {
    check_partition(psi, partition)?;
    partition
        .blocks()
        .iter()
        .map(|block| measure.of_ket(psi, block))
        .collect()
}

fn check_partition<T: Real>(psi: &Ket<T>, partition: &Partition) -> Result<()> {
    if partition.parties() != psi.dims().parties() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} parties, state has {}",
            partition.parties(),
            psi.dims().parties()
        )));
    }
    if partition.len() < 2 {
        return Err(Error::InvalidPartition("need at least two blocks".into()));
    }
    Ok(())
}

/// `r_j = Σ_{k≠j} v_k^α − v_j^α` for every `j`.
pub fn epi_residuals<T: Real>(values: &[T], alpha: Alpha<T>) -> Result<Vec<T>> {
    if let Some(v) = values.iter().find(|v| !(**v >= T::zero())) {
        return Err(Error::InvalidParameter(format!(
            "measure values must be non-negative, got {}",
            v.as_f64()
        )));
    }
    let powers: Vec<T> = values
        .iter()
        .map(|&v| alpha_power(v, alpha.value()))
        .collect();
    Ok((0..powers.len())
        .map(|j| {
            let others = powers
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(T::zero(), |acc, (_, &p)| acc + p);
            others - powers[j]
        })
        .collect())
}

/// Values, residuals and verdict for one state, partition, measure and exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct EpiReport<T> {
    pub partition: Partition,
    pub measure: Measure<T>,
    pub alpha: T,
    pub unproven_regime: bool,
    pub values: Vec<T>,
    pub residuals: Vec<T>,
    pub min_residual: T,
    /// Block index attaining `min_residual`.
    pub argmin: usize,
    pub holds: bool,
}

impl<T: Real> EpiReport<T> {
    pub fn from_values(
        partition: Partition,
        measure: Measure<T>,
        values: Vec<T>,
        alpha: Alpha<T>,
        tolerance: T,
    ) -> Result<Self> {
        if values.len() != partition.len() {
            return Err(Error::LengthMismatch {
                expected: partition.len(),
                got: values.len(),
            });
        }
        let residuals = epi_residuals(&values, alpha)?;
        let (argmin, min_residual) =
            residuals
                .iter()
                .copied()
                .enumerate()
                .fold(
                    (0, residuals[0]),
                    |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) },
                );
        Ok(Self {
            partition,
            measure,
            alpha: alpha.value(),
            unproven_regime: alpha.is_unproven(),
            values,
            residuals,
            min_residual,
            argmin,
            holds: min_residual >= -tolerance,
        })
    }
}

/// Full report with the default violation tolerance.
pub fn epi_report<T: Real>(
    psi: &Ket<T>,
    partition: &Partition,
    measure: Measure<T>,
    alpha: Alpha<T>,
) -> Result<EpiReport<T>> {
    epi_report_with_tolerance(psi, partition, measure, alpha, T::lit(tol::VIOLATION))
}

pub fn epi_report_with_tolerance<T: Real>(
    psi: &Ket<T>,
    partition: &Partition,
    measure: Measure<T>,
    alpha: Alpha<T>,
    tolerance: T,
) -> Result<EpiReport<T>> {
    let values = one_to_rest_values(psi, partition, &measure)?;
    EpiReport::from_values(partition.clone(), measure, values, alpha, tolerance)
}

/// GEM indicator over the single-party partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Indicator<T> {
    /// `G(A_i | rest)` per party.
    pub values: Vec<T>,
    /// `τ_α^i = Σ_{j≠i} G_j^α − G_i^α`.
    pub taus: Vec<T>,
    /// `δ_α = min_i τ_α^i`.
    pub delta: T,
}

/// `δ_α^G` and the per-party `τ_α^i` for `α ∈ (0, 1)`.
pub fn indicator_delta<T: Real>(psi: &Ket<T>, alpha: T) -> Result<Indicator<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "indicator alpha must lie in (0, 1), got {}",
            alpha.as_f64()
        )));
    }
    let n = psi.dims().parties();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "indicator needs at least two parties".into(),
        ));
    }
    let values = one_to_rest_values(psi, &Partition::singletons(n), &Measure::Gem)?;
    let taus = epi_residuals(&values, Alpha::new(alpha)?)?;
    let delta = taus
        .iter()
        .copied()
        .fold(taus[0], |a, b| if b < a { b } else { a });
    Ok(Indicator {
        values,
        taus,
        delta,
    })
}

/// Evaluates `a^α + b^α ≥ c^α` for `a, b, c ∈ (0, 1]`, `a + b ≥ c`,
/// `α ∈ (0, 1]`. Precondition violations are errors.
pub fn power_inequality_holds<T: Real>(a: T, b: T, c: T, alpha: T) -> Result<bool> {
    let unit = |x: T| x > T::zero() && x <= T::one();
    if !(unit(a) && unit(b) && unit(c)) {
        return Err(Error::InvalidParameter("a, b, c must lie in (0, 1]".into()));
    }
    if !unit(alpha) {
        return Err(Error::InvalidParameter("alpha must lie in (0, 1]".into()));
    }
    if a + b < c {
        return Err(Error::InvalidParameter(
            "precondition a + b >= c fails".into(),
        ));
    }
    let lhs = a.powf(alpha) + b.powf(alpha);
    let rhs = c.powf(alpha);
    // a few ulps of slack for the a + b = c, α = 1 boundary
    Ok(lhs >= rhs - T::lit(4.0) * T::default_epsilon() * rhs)
}

/// `g(α) = Σ_{k≠j*} v_k^α − v_{j*}^α` over the grid, for designated block `j*`.
pub fn alpha_sweep<T: Real>(
    values: &[T],
    designated: usize,
    grid: &AlphaGrid<T>,
) -> Result<Vec<(T, T)>> {
    if designated >= values.len() {
        return Err(Error::InvalidParameter(format!(
            "designated block {designated} out of range for {} values",
            values.len()
        )));
    }
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty alpha grid".into()));
    }
    grid.points()
        .iter()
        .map(|&a| Ok((a.value(), epi_residuals(values, a)?[designated])))
        .collect()
}

/// Index of the largest value, the block where the inequality binds.
pub fn largest_block<T: Real>(values: &[T]) -> usize {
    values
        .iter()
        .enumerate()
        .fold(
            (0, T::min_value().unwrap_or(-T::one())),
            |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) },
        )
        .0
}
