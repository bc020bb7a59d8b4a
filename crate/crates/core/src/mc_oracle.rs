//! Brute-force Monte Carlo estimation of Pitman-closeness probabilities.
//!
//! This is the verification oracle for every quadrature and closed-form
//! result in the crate: estimators are realized by direct simulation (draw,
//! sort, combine) with no shared code path through the incomplete-beta or
//! quadrature routines.
//!
//! Estimators that must be compared on the *same* underlying draws (a convex
//! combination against its own component, the midpoint against a reweighting
//! of the same pair) reference shared slots: each replication first draws
//! one value per context distribution, and `Shared(k)` picks up the k-th.
//! Everything else samples from per-estimator substreams, so the two sides
//! are independent unless explicitly coupled.

use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng::{open_unit, SeedStream};
use crate::rss;

/// Minimum replication count accepted by the oracle.
pub const MIN_REPS: u64 = 10_000;

const MAX_SHARED_SLOTS: usize = 8;

/// Symbolic description of an estimator realizable by sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum EstimatorSpec {
    /// One draw from a distribution.
    Draw(DistributionSpec),
    /// The i-th order statistic of n i.i.d. draws.
    OrderStat {
        d: DistributionSpec,
        i: usize,
        n: usize,
    },
    /// Sample median of n i.i.d. draws (midpoint of the central pair for
    /// even n).
    Median { d: DistributionSpec, n: usize },
    /// Sample mean of n i.i.d. draws.
    Mean { d: DistributionSpec, n: usize },
    /// Weighted sum of i.i.d. draws, one per weight.
    WeightedSum {
        d: DistributionSpec,
        weights: Vec<f64>,
    },
    /// omega * first + (1 - omega) * second.
    Convex {
        first: Box<EstimatorSpec>,
        second: Box<EstimatorSpec>,
        omega: f64,
    },
    /// first with probability zeta, second otherwise.
    Randomized {
        first: Box<EstimatorSpec>,
        second: Box<EstimatorSpec>,
        zeta: f64,
    },
    /// Median-RSS estimator with set size 2m-1.
    MedianRss { d: DistributionSpec, m: usize },
    /// Randomized-median-RSS estimator with set size 2m.
    RandomizedMedianRss {
        d: DistributionSpec,
        m: usize,
        zeta: f64,
    },
    /// The k-th shared context draw of the replication.
    Shared(usize),
}

impl EstimatorSpec {
    fn validate(&self, n_shared: usize) -> Result<()> {
        match self {
            EstimatorSpec::Draw(_) => Ok(()),
            EstimatorSpec::OrderStat { i, n, .. } => {
                if *n < 1 || *i < 1 || i > n {
                    return Err(Error::InvalidEstimator(format!(
                        "order statistic needs 1 <= i <= n, got i={i}, n={n}"
                    )));
                }
                Ok(())
            }
            EstimatorSpec::Median { n, .. } | EstimatorSpec::Mean { n, .. } => {
                if *n < 1 {
                    return Err(Error::InvalidEstimator(
                        "sample size must be positive".into(),
                    ));
                }
                Ok(())
            }
            EstimatorSpec::WeightedSum { weights, .. } => {
                if weights.is_empty() || weights.iter().any(|w| !w.is_finite()) {
                    return Err(Error::InvalidEstimator(
                        "weighted sum needs finite, non-empty weights".into(),
                    ));
                }
                Ok(())
            }
            EstimatorSpec::Convex {
                first,
                second,
                omega,
            } => {
                if !(0.0..=1.0).contains(omega) {
                    return Err(Error::InvalidEstimator(format!(
                        "convex weight must lie in [0, 1], got {omega}"
                    )));
                }
                first.validate(n_shared)?;
                second.validate(n_shared)
            }
            EstimatorSpec::Randomized {
                first,
                second,
                zeta,
            } => {
                if !(0.0..=1.0).contains(zeta) {
                    return Err(Error::InvalidEstimator(format!(
                        "randomization probability must lie in [0, 1], got {zeta}"
                    )));
                }
                first.validate(n_shared)?;
                second.validate(n_shared)
            }
            EstimatorSpec::MedianRss { m, .. } => {
                if *m < 1 {
                    return Err(Error::InvalidEstimator("need m >= 1".into()));
                }
                Ok(())
            }
            EstimatorSpec::RandomizedMedianRss { m, zeta, .. } => {
                if *m < 1 {
                    return Err(Error::InvalidEstimator("need m >= 1".into()));
                }
                if !(0.0..=1.0).contains(zeta) {
                    return Err(Error::InvalidEstimator(format!(
                        "randomization probability must lie in [0, 1], got {zeta}"
                    )));
                }
                Ok(())
            }
            EstimatorSpec::Shared(k) => {
                if *k >= n_shared {
                    return Err(Error::InvalidEstimator(format!(
                        "shared slot {k} out of range (context has {n_shared})"
                    )));
                }
                Ok(())
            }
        }
    }

    fn realize(&self, shared: &[f64], rng: &mut ChaCha12Rng) -> f64 {
        match self {
            EstimatorSpec::Draw(d) => d.sample_one(rng),
            EstimatorSpec::OrderStat { d, i, n } => {
                let mut v = d.sample(*n, rng);
                v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("draws are never NaN"));
                v[i - 1]
            }
            EstimatorSpec::Median { d, n } => rss::sample_median(&d.sample(*n, rng)),
            EstimatorSpec::Mean { d, n } => {
                d.sample(*n, rng).iter().sum::<f64>() / *n as f64
            }
            EstimatorSpec::WeightedSum { d, weights } => weights
                .iter()
                .map(|w| w * d.sample_one(rng))
                .sum(),
            EstimatorSpec::Convex {
                first,
                second,
                omega,
            } => {
                let a = first.realize(shared, rng);
                let b = second.realize(shared, rng);
                omega * a + (1.0 - omega) * b
            }
            EstimatorSpec::Randomized {
                first,
                second,
                zeta,
            } => {
                if open_unit(rng) <= *zeta {
                    first.realize(shared, rng)
                } else {
                    second.realize(shared, rng)
                }
            }
            EstimatorSpec::MedianRss { d, m } => {
                rss::median_rss_estimate(&rss::draw_median_rss(d, *m, rng))
                    .expect("odd by construction")
            }
            EstimatorSpec::RandomizedMedianRss { d, m, zeta } => {
                let sample = rss::draw_randomized_median_rss(d, *m, *zeta, rng);
                rss::randomized_median_rss_estimate(&sample, rng)
                    .expect("even by construction")
            }
            EstimatorSpec::Shared(k) => shared[*k],
        }
    }
}

/// A Monte Carlo PC estimate with its binomial standard error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McEstimate {
    pub p_hat: f64,
    pub std_err: f64,
    pub reps: u64,
    pub seed: u64,
    pub ties: u64,
}

impl McEstimate {
    /// Distance from a reference value in standard errors.
    pub fn sigmas_from(&self, reference: f64) -> f64 {
        let se = self.std_err.max(f64::MIN_POSITIVE);
        (self.p_hat - reference).abs() / se
    }
}

/// Estimate P(|A - center| < |B - center|) by simulation.
///
/// Strict inequality throughout; exact float ties are counted separately and
/// never split. Replication `r` draws the shared slots from substream
/// (r, 0), then realizes A on (r, 1) and B on (r, 2). Results are bitwise
/// reproducible for a given seed, independent of worker count.
pub fn mc_pc(
    est_a: &EstimatorSpec,
    est_b: &EstimatorSpec,
    shared: &[DistributionSpec],
    center: f64,
    reps: u64,
    seed: u64,
) -> Result<McEstimate> {
    if reps < MIN_REPS {
        return Err(Error::Domain(format!(
            "Monte Carlo oracle needs at least {MIN_REPS} replications, got {reps}"
        )));
    }
    if shared.len() > MAX_SHARED_SLOTS {
        return Err(Error::InvalidEstimator(format!(
            "at most {MAX_SHARED_SLOTS} shared slots supported"
        )));
    }
    est_a.validate(shared.len())?;
    est_b.validate(shared.len())?;

    let stream = SeedStream::new(seed);
    let (wins, ties) = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut slot_vals = [0.0f64; MAX_SHARED_SLOTS];
            if !shared.is_empty() {
                let mut shared_rng = stream.substream(rep, 0);
                for (k, d) in shared.iter().enumerate() {
                    slot_vals[k] = d.sample_one(&mut shared_rng);
                }
            }
            let vals = &slot_vals[..shared.len()];
            let a = est_a.realize(vals, &mut stream.substream(rep, 1));
            let b = est_b.realize(vals, &mut stream.substream(rep, 2));
            let da = (a - center).abs();
            let db = (b - center).abs();
            if da < db {
                (1u64, 0u64)
            } else if da == db {
                (0, 1)
            } else {
                (0, 0)
            }
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));

    let p_hat = wins as f64 / reps as f64;
    Ok(McEstimate {
        p_hat,
        std_err: (p_hat * (1.0 - p_hat) / reps as f64).sqrt(),
        reps,
        seed,
        ties,
    })
}
