//! Ranked-set sampling designs for estimating the center of a symmetric
//! population.
//!
//! The odd design (set size n = 2m-1) ranks n independent sets of n units
//! and measures each set's median; its estimator is the median of those
//! measurements. The even design (n = 2m) measures rank m or m+1 of each
//! size-2m set by an independent coin, and the final estimator picks the
//! m-th or (m+1)-th order statistic of the measured values by another coin.
//! For a fair coin each measured unit has exactly the beta-generated
//! density with exponent m-1 of the parent.
//!
//! Ranking is perfect (exact order statistics); every design measures n
//! units per cycle, so comparisons across designs are budget-fair.

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::rng::{open_unit, SeedStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SrsEstimator {
    Median,
    Mean,
}

/// A sampling design with its measurement budget equal to the set size.
#[derive(Debug, Clone, PartialEq)]
pub enum RssScheme {
    /// Median ranked set sampling; `set_size` must be odd.
    MedianRss { set_size: usize },
    /// Randomized median ranked set sampling; `set_size` must be even.
    /// `zeta` is the probability of measuring rank m rather than m+1.
    RandomizedMedianRss { set_size: usize, zeta: f64 },
    /// Simple random sample with the given summary estimator.
    Srs {
        size: usize,
        estimator: SrsEstimator,
    },
}

impl RssScheme {
    pub fn validate(&self) -> Result<()> {
        match self {
            RssScheme::MedianRss { set_size } => {
                if *set_size == 0 || set_size % 2 == 0 {
                    return Err(Error::Domain(format!(
                        "median RSS requires an odd set size, got {set_size}"
                    )));
                }
            }
            RssScheme::RandomizedMedianRss { set_size, zeta } => {
                if *set_size == 0 || set_size % 2 == 1 {
                    return Err(Error::Domain(format!(
                        "randomized median RSS requires an even set size, got {set_size}"
                    )));
                }
                if !(0.0..=1.0).contains(zeta) {
                    return Err(Error::Domain(format!(
                        "randomization probability must lie in [0, 1], got {zeta}"
                    )));
                }
            }
            RssScheme::Srs { size, .. } => {
                if *size == 0 {
                    return Err(Error::Domain("sample size must be positive".into()));
                }
            }
        }
        Ok(())
    }

    /// Measured units per cycle (n ranked sets of n with one measurement
    /// each, or the plain sample size).
    pub fn measurements(&self) -> usize {
        match self {
            RssScheme::MedianRss { set_size } => *set_size,
            RssScheme::RandomizedMedianRss { set_size, .. } => *set_size,
            RssScheme::Srs { size, .. } => *size,
        }
    }
}

impl fmt::Display for RssScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RssScheme::MedianRss { set_size } => write!(f, "median-rss:{set_size}"),
            RssScheme::RandomizedMedianRss { set_size, zeta } => {
                if *zeta == 0.5 {
                    write!(f, "randomized-median-rss:{set_size}")
                } else {
                    write!(f, "randomized-median-rss:{set_size}:{zeta}")
                }
            }
            RssScheme::Srs { size, estimator } => match estimator {
                SrsEstimator::Median => write!(f, "srs-median:{size}"),
                SrsEstimator::Mean => write!(f, "srs-mean:{size}"),
            },
        }
    }
}

impl FromStr for RssScheme {
    type Err = Error;

    /// Grammar: `median-rss:N`, `randomized-median-rss:N[:zeta]`,
    /// `srs-median:N`, `srs-mean:N`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let bad = |what: &str| Error::Domain(format!("cannot parse scheme \"{s}\": {what}"));
        let size: usize = parts
            .next()
            .ok_or_else(|| bad("missing set size"))?
            .parse()
            .map_err(|_| bad("set size is not an integer"))?;
        let scheme = match kind {
            "median-rss" => RssScheme::MedianRss { set_size: size },
            "randomized-median-rss" => {
                let zeta = match parts.next() {
                    Some(z) => z.parse().map_err(|_| bad("zeta is not a number"))?,
                    None => 0.5,
                };
                RssScheme::RandomizedMedianRss {
                    set_size: size,
                    zeta,
                }
            }
            "srs-median" => RssScheme::Srs {
                size,
                estimator: SrsEstimator::Median,
            },
            "srs-mean" => RssScheme::Srs {
                size,
                estimator: SrsEstimator::Mean,
            },
            other => return Err(bad(&format!("unknown kind \"{other}\""))),
        };
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        scheme.validate()?;
        Ok(scheme)
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(|a, b| a.partial_cmp(b).expect("draws are never NaN"));
    v
}

/// Exact sample median: middle order statistic for odd length, midpoint of
/// the two central order statistics for even length.
pub fn sample_median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let v = sorted(values.to_vec());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Median ranked set sample for set size 2m-1: each of the 2m-1 returned
/// values is the exact median of an independent size-(2m-1) draw.
pub fn draw_median_rss<R: RngCore + ?Sized>(
    d: &DistributionSpec,
    m: usize,
    rng: &mut R,
) -> Vec<f64> {
    assert!(m >= 1);
    let n = 2 * m - 1;
    (0..n)
        .map(|_| {
            let set = sorted(d.sample(n, rng));
            set[m - 1]
        })
        .collect()
}

/// The median-RSS estimator: median of the measured medians. Defined only
/// for the odd design, so even-length input is rejected.
pub fn median_rss_estimate(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() || sample.len() % 2 == 0 {
        return Err(Error::Domain(format!(
            "median-RSS estimator needs an odd number of measurements, got {}",
            sample.len()
        )));
    }
    Ok(sample_median(sample))
}

/// Randomized median ranked set sample for set size 2m: from each
/// independent size-2m set, measure rank m with probability `zeta` and rank
/// m+1 otherwise. For zeta = 1/2 each value has the beta-generated density
/// with exponent m-1 of the parent.
pub fn draw_randomized_median_rss<R: RngCore + ?Sized>(
    d: &DistributionSpec,
    m: usize,
    zeta: f64,
    rng: &mut R,
) -> Vec<f64> {
    assert!(m >= 1);
    assert!((0.0..=1.0).contains(&zeta));
    let n = 2 * m;
    (0..n)
        .map(|_| {
            let set = sorted(d.sample(n, rng));
            if open_unit(rng) <= zeta {
                set[m - 1]
            } else {
                set[m]
            }
        })
        .collect()
}

/// The randomized-median-RSS estimator: the m-th or (m+1)-th order statistic
/// of the 2m measured values, chosen by an independent fair coin.
pub fn randomized_median_rss_estimate<R: RngCore + ?Sized>(
    sample: &[f64],
    rng: &mut R,
) -> Result<f64> {
    if sample.is_empty() || sample.len() % 2 == 1 {
        return Err(Error::Domain(format!(
            "randomized-median-RSS estimator needs an even number of \
             measurements, got {}",
            sample.len()
        )));
    }
    let m = sample.len() / 2;
    let v = sorted(sample.to_vec());
    Ok(if open_unit(rng) <= 0.5 { v[m - 1] } else { v[m] })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    MedianRss,
    RandomizedMedianRss,
    SrsMedian,
    SrsMean,
}

/// One realized estimate with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub estimator: EstimatorKind,
    pub value: f64,
    pub seed: u64,
    pub measurements_used: usize,
}

pub(crate) fn scheme_estimate<R: RngCore + ?Sized>(
    scheme: &RssScheme,
    d: &DistributionSpec,
    rng: &mut R,
) -> f64 {
    match scheme {
        RssScheme::MedianRss { set_size } => {
            let m = (set_size + 1) / 2;
            median_rss_estimate(&draw_median_rss(d, m, rng)).expect("odd design")
        }
        RssScheme::RandomizedMedianRss { set_size, zeta } => {
            let m = set_size / 2;
            let sample = draw_randomized_median_rss(d, m, *zeta, rng);
            randomized_median_rss_estimate(&sample, rng).expect("even design")
        }
        RssScheme::Srs { size, estimator } => {
            let draws = d.sample(*size, rng);
            match estimator {
                SrsEstimator::Median => sample_median(&draws),
                SrsEstimator::Mean => draws.iter().sum::<f64>() / *size as f64,
            }
        }
    }
}

/// Draw one estimate from a scheme under a fresh master seed.
pub fn estimate(scheme: &RssScheme, d: &DistributionSpec, seed: u64) -> Result<EstimateRecord> {
    scheme.validate()?;
    let stream = SeedStream::new(seed);
    let mut rng = stream.substream(0, 0);
    let value = scheme_estimate(scheme, d, &mut rng);
    Ok(EstimateRecord {
        estimator: match scheme {
            RssScheme::MedianRss { .. } => EstimatorKind::MedianRss,
            RssScheme::RandomizedMedianRss { .. } => EstimatorKind::RandomizedMedianRss,
            RssScheme::Srs {
                estimator: SrsEstimator::Median,
                ..
            } => EstimatorKind::SrsMedian,
            RssScheme::Srs {
                estimator: SrsEstimator::Mean,
                ..
            } => EstimatorKind::SrsMean,
        },
        value,
        seed,
        measurements_used: scheme.measurements(),
    })
}

/// Monte Carlo design comparison, serialized by the CLI as the rss-sim
/// report. `p_hat` estimates P(|est_A - center| < |est_B - center|); exact
/// float ties are excluded from the numerator and counted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignComparison {
    #[serde(rename = "schemeA")]
    pub scheme_a: String,
    #[serde(rename = "schemeB")]
    pub scheme_b: String,
    pub parent: DistributionSpec,
    pub reps: u64,
    pub seed: u64,
    pub p_hat: f64,
    pub std_err: f64,
    pub ties: u64,
    /// Set when reps < 10^4, too few for the normal-approximation error bar.
    pub low_reps_warning: bool,
}

impl DesignComparison {
    pub fn pc_result(&self) -> crate::pitman::PcResult {
        crate::pitman::PcResult::new(
            self.p_hat,
            crate::pitman::Method::MonteCarlo,
            self.std_err,
        )
    }
}

/// Compare two designs on the same parent by independent replication.
///
/// Replication `r` draws estimator A from substream (r, lane 1) and
/// estimator B from substream (r, lane 2); results are bitwise identical
/// for a given seed regardless of the rayon worker count.
pub fn compare_designs(
    scheme_a: &RssScheme,
    scheme_b: &RssScheme,
    d: &DistributionSpec,
    reps: u64,
    seed: u64,
) -> Result<DesignComparison> {
    scheme_a.validate()?;
    scheme_b.validate()?;
    if reps == 0 {
        return Err(Error::Domain("need at least one replication".into()));
    }
    let stream = SeedStream::new(seed);
    let center = d.center();
    let (wins, ties) = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let a = scheme_estimate(scheme_a, d, &mut stream.substream(rep, 1));
            let b = scheme_estimate(scheme_b, d, &mut stream.substream(rep, 2));
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
    Ok(DesignComparison {
        scheme_a: scheme_a.to_string(),
        scheme_b: scheme_b.to_string(),
        parent: d.clone(),
        reps,
        seed,
        p_hat,
        std_err: (p_hat * (1.0 - p_hat) / reps as f64).sqrt(),
        ties,
        low_reps_warning: reps < 10_000,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderstats::OrderStatSpec;

    fn normal() -> DistributionSpec {
        DistributionSpec::normal(0.0, 1.0).unwrap()
    }

    #[test]
    fn median_estimator_examples() {
        assert_eq!(median_rss_estimate(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median_rss_estimate(&[7.5]).unwrap(), 7.5);
        assert!(median_rss_estimate(&[1.0, 2.0]).is_err());
        assert!(median_rss_estimate(&[]).is_err());
        // permutation invariance
        assert_eq!(
            median_rss_estimate(&[5.0, -1.0, 0.0, 9.0, 2.0]).unwrap(),
            median_rss_estimate(&[9.0, 2.0, 5.0, 0.0, -1.0]).unwrap()
        );
    }

    #[test]
    fn randomized_estimator_picks_middle_pair() {
        let s = SeedStream::new(5);
        let sample = [4.0, 1.0, 3.0, 2.0];
        for rep in 0..64 {
            let v =
                randomized_median_rss_estimate(&sample, &mut s.substream(rep, 0)).unwrap();
            assert!(v == 2.0 || v == 3.0);
        }
        let mut r = s.substream(0, 0);
        assert!(randomized_median_rss_estimate(&[1.0, 2.0, 3.0], &mut r).is_err());
    }

    #[test]
    fn randomized_estimator_coin_is_fair() {
        let s = SeedStream::new(11);
        let trials = 100_000u64;
        let mut lows = 0u64;
        for rep in 0..trials {
            let v =
                randomized_median_rss_estimate(&[1.0, 2.0], &mut s.substream(rep, 0)).unwrap();
            if v == 1.0 {
                lows += 1;
            }
        }
        let p = lows as f64 / trials as f64;
        let bound = 3.0 * 0.5 / (trials as f64).sqrt();
        assert!((p - 0.5).abs() < bound, "frequency {p}");
    }

    #[test]
    fn draws_have_expected_shape_and_determinism() {
        let d = normal();
        let s = SeedStream::new(3);
        let a = draw_median_rss(&d, 2, &mut s.substream(0, 0));
        let b = draw_median_rss(&d, 2, &mut s.substream(0, 0));
        assert_eq!(a.len(), 3);
        assert_eq!(a, b);
        let c = draw_randomized_median_rss(&d, 3, 0.5, &mut s.substream(0, 0));
        assert_eq!(c.len(), 6);
        // m = 1 median RSS is a single plain draw
        let one = draw_median_rss(&d, 1, &mut s.substream(9, 0));
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn ranked_unit_matches_order_statistic_cdf() {
        // m=2: each measured unit is the median of 3; KS against I_F(2, 2)
        let d = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let spec = OrderStatSpec::new(d.clone(), 2, 3).unwrap();
        let s = SeedStream::new(17);
        let reps = 100_000usize / 3 + 1;
        let mut draws = Vec::with_capacity(3 * reps);
        for rep in 0..reps {
            draws.extend(draw_median_rss(&d, 2, &mut s.substream(rep as u64, 0)));
        }
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = draws.len();
        let mut dks = 0.0f64;
        for (k, x) in draws.iter().enumerate() {
            let f = spec.cdf(*x);
            dks = dks
                .max((f - k as f64 / n as f64).abs())
                .max((f - (k + 1) as f64 / n as f64).abs());
        }
        assert!(dks < 1.63 / (n as f64).sqrt(), "KS distance {dks}");
    }

    #[test]
    fn zeta_one_always_takes_lower_rank() {
        let d = normal();
        let s = SeedStream::new(23);
        // with zeta = 1 the measured value is rank m of each set, never m+1;
        // verify via the deterministic branch by reconstructing: rank m of
        // 2m draws is below the set midpoint less often than rank m+1
        let mut below = 0u64;
        let reps = 2000u64;
        for rep in 0..reps {
            let mut rng = s.substream(rep, 0);
            let v = draw_randomized_median_rss(&d, 1, 1.0, &mut rng);
            // m = 1, zeta = 1: always the minimum of each pair
            let mut check = s.substream(rep, 0);
            let pair = sorted(d.sample(2, &mut check));
            let _coin = open_unit(&mut check);
            assert_eq!(v[0], pair[0]);
            if v[0] < 0.0 {
                below += 1;
            }
        }
        assert!(below > reps / 2, "minimum of a pair skews low");
    }

    #[test]
    fn scheme_parsing_roundtrip() {
        for s in [
            "median-rss:3",
            "randomized-median-rss:4",
            "randomized-median-rss:6:0.25",
            "srs-median:5",
            "srs-mean:4",
        ] {
            let scheme: RssScheme = s.parse().unwrap();
            let canonical = scheme.to_string();
            let back: RssScheme = canonical.parse().unwrap();
            assert_eq!(scheme, back);
        }
        assert!("median-rss:4".parse::<RssScheme>().is_err());
        assert!("randomized-median-rss:3".parse::<RssScheme>().is_err());
        assert!("srs-median:0".parse::<RssScheme>().is_err());
        assert!("banana:3".parse::<RssScheme>().is_err());
        assert!("median-rss:x".parse::<RssScheme>().is_err());
    }

    #[test]
    fn estimate_accounts_measurement_budget() {
        let d = normal();
        let r = estimate(&RssScheme::MedianRss { set_size: 5 }, &d, 99).unwrap();
        assert_eq!(r.measurements_used, 5);
        assert_eq!(r.estimator, EstimatorKind::MedianRss);
        let r2 = estimate(&RssScheme::MedianRss { set_size: 5 }, &d, 99).unwrap();
        assert_eq!(r.value, r2.value);
    }

    #[test]
    fn identical_schemes_compare_even() {
        let d = normal();
        let scheme = RssScheme::Srs {
            size: 3,
            estimator: SrsEstimator::Median,
        };
        let cmp = compare_designs(&scheme, &scheme, &d, 100_000, 4242).unwrap();
        assert!(
            (cmp.p_hat - 0.5).abs() <= 3.5 * cmp.std_err,
            "p_hat {} +- {}",
            cmp.p_hat,
            cmp.std_err
        );
        assert_eq!(cmp.ties, 0);
        assert!(!cmp.low_reps_warning);
    }

    #[test]
    fn comparison_is_seed_deterministic() {
        let d = normal();
        let a = RssScheme::MedianRss { set_size: 3 };
        let b = RssScheme::Srs {
            size: 3,
            estimator: SrsEstimator::Median,
        };
        let r1 = compare_designs(&a, &b, &d, 20_000, 7).unwrap();
        let r2 = compare_designs(&a, &b, &d, 20_000, 7).unwrap();
        assert_eq!(r1.p_hat, r2.p_hat);
        assert_eq!(r1.ties, r2.ties);
        let r3 = compare_designs(&a, &b, &d, 20_000, 8).unwrap();
        assert_ne!(r1.p_hat, r3.p_hat);
    }

    #[test]
    fn low_reps_flagged() {
        let d = normal();
        let s = RssScheme::Srs {
            size: 1,
            estimator: SrsEstimator::Mean,
        };
        let cmp = compare_designs(&s, &s, &d, 5_000, 1).unwrap();
        assert!(cmp.low_reps_warning);
    }
}
