//! Randomized audits of the polygon inequality.
//!
//! Trial `t` of a run with master seed `s` draws its state from
//! `derive_seed(s, t)`, so trials can run in any order (or in parallel) and
//! any single trial can be replayed from the summary.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{Alpha, EpiReport};
use crate::error::{Error, Result};
use crate::gallery::{gw_state, product_purification, GwSpec, ProductPurificationSpec};
use crate::measures::Measure;
use crate::scalar::Real;
use crate::tensor::random::{derive_seed, haar_random_ket_with, rng_from_seed};
use crate::tensor::{Dims, Ket, Partition};
use crate::tol;

/// State family an audit draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sampler {
    /// Haar-random pure states on the given profile.
    Haar,
    /// Purifications of `diag(a) ⊗ diag(b)` with uniformly random spectra;
    /// profile `[d_a, d_b]` or `[d_a, d_b, d_a·d_b]`.
    Purification,
    /// Generalized W states with Gaussian coefficients; profile must be
    /// uniform with local dimension `d + 1`.
    Gw,
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "haar" => Ok(Self::Haar),
            "purification" => Ok(Self::Purification),
            "gw" => Ok(Self::Gw),
            other => Err(Error::InvalidParameter(format!(
                "unknown sampler {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Haar => "haar",
            Self::Purification => "purification",
            Self::Gw => "gw",
        })
    }
}

impl Sampler {
    /// Whether the inequality is a theorem for every state this sampler can
    /// produce, for `measure` at exponents in `(0, 1]`.
    pub fn proven_for<T: Real>(&self, measure: &Measure<T>) -> bool {
        match measure {
            Measure::Gem | Measure::Concurrence => true,
            Measure::QConcurrence(q) => *q >= T::lit(2.0),
            Measure::Negativity => *self == Sampler::Gw,
        }
    }

    /// Whether every state this sampler produces is known to violate the
    /// inequality for `measure` at `α = 1` on the single-party partition.
    pub fn violation_expected<T: Real>(&self, measure: &Measure<T>) -> bool {
        *self == Sampler::Purification && *measure == Measure::Negativity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig<T: Real> {
    pub dims: Dims,
    pub partition: Partition,
    pub measure: Measure<T>,
    pub alphas: Vec<Alpha<T>>,
    pub trials: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub tolerance: T,
}

impl<T: Real> AuditConfig<T> {
    /// Defaults: single-party partition, `α = 1`, 1000 trials, seed 0,
    /// violation tolerance 1e-9.
    pub fn new(dims: Dims, measure: Measure<T>, sampler: Sampler) -> Result<Self> {
        let dims = match sampler {
            Sampler::Haar => dims,
            Sampler::Purification => {
                let d = dims.as_slice();
                match *d {
                    [da, db] => Dims::new(vec![da, db, da * db])?,
                    [da, db, dc] if dc == da * db => dims,
                    _ => {
                        return Err(Error::InvalidDims(format!(
                        "purification sampler needs [d_a, d_b] or [d_a, d_b, d_a*d_b], got {d:?}"
                    )))
                    }
                }
            }
            Sampler::Gw => {
                let d = dims.as_slice();
                if d.len() < 2 || d.iter().any(|&x| x != d[0]) {
                    return Err(Error::InvalidDims(format!(
                        "GW sampler needs a uniform profile with at least two parties, got {d:?}"
                    )));
                }
                dims
            }
        };
        let partition = Partition::singletons(dims.parties());
        Ok(Self {
            dims,
            partition,
            measure,
            alphas: vec![Alpha::one()],
            trials: 1000,
            seed: 0,
            sampler,
            tolerance: T::lit(tol::VIOLATION),
        })
    }

    pub fn with_partition(mut self, partition: Partition) -> Result<Self> {
        if partition.parties() != self.dims.parties() || partition.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "audit partition must split the {} parties into at least two blocks",
                self.dims.parties()
            )));
        }
        self.partition = partition;
        Ok(self)
    }

    pub fn with_alphas(mut self, alphas: Vec<Alpha<T>>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("no alpha values".into()));
        }
        self.alphas = alphas;
        Ok(self)
    }

    pub fn with_trials(mut self, trials: usize) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        self.trials = trials;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Seed used for trial `trial`.
    pub fn trial_seed(&self, trial: usize) -> u64 {
        derive_seed(self.seed, trial as u64)
    }
}

/// Draws the state of the configured family for `seed`.
pub fn sample_state<T: Real>(config: &AuditConfig<T>, seed: u64) -> Result<Ket<T>> {
    let mut rng = rng_from_seed(seed);
    let d = config.dims.as_slice();
    match config.sampler {
        Sampler::Haar => Ok(haar_random_ket_with(&config.dims, &mut rng)),
        Sampler::Purification => {
            let spec = ProductPurificationSpec::random(d[0], d[1], &mut rng)?;
            Ok(product_purification(&spec))
        }
        Sampler::Gw => {
            let spec = GwSpec::random(d.len(), d[0] - 1, &mut rng)?;
            Ok(gw_state(&spec))
        }
    }
}

/// Replays trial `trial`: one report per configured exponent.
pub fn audit_trial<T: Real>(config: &AuditConfig<T>, trial: usize) -> Result<Vec<EpiReport<T>>> {
    let psi = sample_state(config, config.trial_seed(trial))?;
    let values = super::one_to_rest_values(&psi, &config.partition, &config.measure)?;
    config
        .alphas
        .iter()
        .map(|&a| {
            EpiReport::from_values(
                config.partition.clone(),
                config.measure,
                values.clone(),
                a,
                config.tolerance,
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditSummary<T> {
    pub trials: usize,
    /// `trials × number of exponents`.
    pub evaluations: usize,
    /// Evaluations with `min_residual < −tolerance`.
    pub violations: usize,
    /// Trials with at least one violating exponent.
    pub violating_trials: usize,
    pub worst_residual: T,
    pub worst_trial: usize,
    pub worst_seed: u64,
    pub worst_alpha: T,
    pub worst_block: usize,
}

struct TrialStats<T> {
    violations: usize,
    min_residual: T,
    alpha: T,
    block: usize,
}

/// Runs every trial (in parallel) and folds the results in trial order.
pub fn audit_random<T: Real>(config: &AuditConfig<T>) -> Result<AuditSummary<T>> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let stats = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let reports = audit_trial(config, t)?;
            let violations = reports.iter().filter(|r| !r.holds).count();
            let worst = reports
                .iter()
                .min_by(|a, b| {
                    a.min_residual
                        .partial_cmp(&b.min_residual)
                        .expect("finite residuals")
                })
                .expect("at least one alpha");
            Ok(TrialStats {
                violations,
                min_residual: worst.min_residual,
                alpha: worst.alpha,
                block: worst.argmin,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summary = AuditSummary {
        trials: config.trials,
        evaluations: config.trials * config.alphas.len(),
        violations: 0,
        violating_trials: 0,
        worst_residual: stats[0].min_residual,
        worst_trial: 0,
        worst_seed: config.trial_seed(0),
        worst_alpha: stats[0].alpha,
        worst_block: stats[0].block,
    };
    for (t, s) in stats.iter().enumerate() {
        summary.violations += s.violations;
        if s.violations > 0 {
            summary.violating_trials += 1;
        }
        if s.min_residual < summary.worst_residual {
            summary.worst_residual = s.min_residual;
            summary.worst_trial = t;
            summary.worst_seed = config.trial_seed(t);
            summary.worst_alpha = s.alpha;
            summary.worst_block = s.block;
        }
    }
    Ok(summary)
}
