//! Runtime verification suites behind the CLI `verify` command.
//!
//! Each property re-checks one of the library's structural guarantees at a
//! configurable Monte Carlo budget. These are smoke-level re-runs of the
//! invariants pinned down in the test suite, built for quick reproduction
//! in the field.

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::distributions::DistributionSpec;
use crate::error::Result;
use crate::mc_oracle::{mc_pc, EstimatorSpec};
use crate::orderstats::{pc_beta_generated, pc_median_sequence, pc_table};
use crate::pitman::{
    default_grid, dominates_on_half_line, is_more_peaked, max_randomization, pc_quadrature,
    pc_randomized, threshold_condition, threshold_condition_dual, uniform_normal_threshold,
    variance_ordering, Verdict,
};
use crate::rng::SeedStream;

#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

fn outcome(name: &str, pass: bool, details: String) -> PropertyOutcome {
    PropertyOutcome {
        name: name.to_string(),
        pass,
        details,
    }
}

/// A randomized symmetric spec with common center 0.
pub fn random_spec(rng: &mut ChaCha12Rng) -> DistributionSpec {
    let scale = 0.5 + 2.0 * rng.random::<f64>();
    match rng.random_range(0..6u32) {
        0 => DistributionSpec::uniform(0.0, scale).unwrap(),
        1 => DistributionSpec::normal(0.0, scale).unwrap(),
        2 => DistributionSpec::logistic(0.0, scale).unwrap(),
        3 => DistributionSpec::laplace(0.0, scale).unwrap(),
        4 => {
            let alpha = [0.5, 1.0, 2.0, 3.0][rng.random_range(0..4usize)];
            DistributionSpec::beta_generated(alpha, DistributionSpec::normal(0.0, scale).unwrap())
                .unwrap()
        }
        _ => {
            let parent = DistributionSpec::logistic(0.0, scale).unwrap();
            DistributionSpec::mixture(
                vec![
                    DistributionSpec::beta_generated(1.0, parent.clone()).unwrap(),
                    DistributionSpec::beta_generated(2.0, parent).unwrap(),
                ],
                vec![0.4, 0.6],
            )
            .unwrap()
        }
    }
}

/// Run every property; `reps` controls the Monte Carlo budget and `tol`
/// the quadrature-vs-oracle sigma allowance (3.5 by convention).
pub fn run_all(seed: u64, reps: u64, sigma_tol: f64) -> Result<Vec<PropertyOutcome>> {
    let mut out = Vec::new();
    let stream = SeedStream::new(seed);

    // exchangeability: identical specs give 1/2
    {
        let mut worst = 0.0f64;
        for d in builtin_specs() {
            let p = pc_quadrature(&d, &d)?.probability;
            worst = worst.max((p - 0.5).abs());
        }
        out.push(outcome(
            "exchangeability",
            worst <= 1e-8,
            format!("max |pc(X,X) - 1/2| = {worst:.2e}"),
        ));
    }

    // complement: pc(X,Y) + pc(Y,X) = 1
    {
        let mut rng = stream.substream(0, 10);
        let mut worst = 0.0f64;
        for _ in 0..6 {
            let x = random_spec(&mut rng);
            let y = random_spec(&mut rng);
            let a = pc_quadrature(&x, &y)?.probability;
            let b = pc_quadrature(&y, &x)?.probability;
            worst = worst.max((a + b - 1.0).abs());
        }
        out.push(outcome(
            "complement",
            worst <= 2e-8,
            format!("max |pc(X,Y) + pc(Y,X) - 1| = {worst:.2e}"),
        ));
    }

    // condition equivalence on a randomized matrix
    {
        let mut rng = stream.substream(0, 11);
        let mut ok = true;
        let mut checked = 0;
        let mut detail = String::new();
        for _ in 0..10 {
            let x = random_spec(&mut rng);
            let y = random_spec(&mut rng);
            let pc = pc_quadrature(&x, &y)?;
            let c1 = threshold_condition(&x, &y)?;
            let c2 = threshold_condition_dual(&x, &y)?;
            if pc.closer == Verdict::Indeterminate {
                continue;
            }
            checked += 1;
            let want = pc.probability >= 0.5;
            if c1.holds != want || c2.holds != want {
                ok = false;
                detail = format!("disagreement at pc = {}", pc.probability);
            }
        }
        out.push(outcome(
            "condition-equivalence",
            ok,
            if ok {
                format!("{checked} non-boundary pairs agree")
            } else {
                detail
            },
        ));
    }

    // sufficiency chain: dominance => peakedness => pc >= 1/2
    {
        let pairs = [
            (
                DistributionSpec::normal(0.0, 1.0).unwrap(),
                DistributionSpec::normal(0.0, 2.0).unwrap(),
            ),
            (
                DistributionSpec::uniform(0.0, 1.0).unwrap(),
                DistributionSpec::normal(0.0, 1.0).unwrap(),
            ),
            (
                DistributionSpec::laplace(0.0, 0.7).unwrap(),
                DistributionSpec::laplace(0.0, 1.3).unwrap(),
            ),
        ];
        let mut ok = true;
        let mut detail = String::from("all implications hold");
        for (x, y) in pairs {
            let grid = default_grid(&x, &y);
            if dominates_on_half_line(&x, &y, &grid)? {
                if !is_more_peaked(&x, &y, &grid)? {
                    ok = false;
                    detail = "dominance without peakedness".into();
                }
                let pc = pc_quadrature(&x, &y)?.probability;
                if pc < 0.5 - 1e-8 {
                    ok = false;
                    detail = format!("dominance but pc = {pc}");
                }
                if !variance_ordering(&x, &y)?.holds {
                    ok = false;
                    detail = "peakedness without variance ordering".into();
                }
            }
        }
        out.push(outcome("sufficiency-chain", ok, detail));
    }

    // scale monotonicity within each location-scale family
    {
        let mut ok = true;
        let mk: [fn(f64) -> DistributionSpec; 4] = [
            |s| DistributionSpec::uniform(0.0, s).unwrap(),
            |s| DistributionSpec::normal(0.0, s).unwrap(),
            |s| DistributionSpec::logistic(0.0, s).unwrap(),
            |s| DistributionSpec::laplace(0.0, s).unwrap(),
        ];
        for f in mk {
            let pc = pc_quadrature(&f(0.9), &f(1.4))?.probability;
            if pc < 0.5 {
                ok = false;
            }
        }
        out.push(outcome(
            "scale-monotonicity",
            ok,
            "smaller scale is Pitman closer".into(),
        ));
    }

    // randomization window: boundary of the randomized estimator
    {
        let mut ok = true;
        for (a, b) in [(0.25, 0.25), (0.375, 0.125)] {
            let z = max_randomization(a, b)?;
            if pc_randomized(0.5 - b, 0.5 + a, z)? != 0.5 {
                ok = false;
            }
            if pc_randomized(0.5 - b, 0.5 + a, z / 2.0)? < 0.5 {
                ok = false;
            }
        }
        out.push(outcome(
            "randomization-window",
            ok,
            "boundary weight keeps exactly 1/2".into(),
        ));
    }

    // order-statistic table laws at a small size
    {
        let x = DistributionSpec::normal(0.0, 1.0).unwrap();
        let t = pc_table(5, &x, &x)?;
        let sym = (t.values[0] - t.values[4]).abs().max((t.values[1] - t.values[3]).abs());
        let unimodal = t.values[2] >= t.values[1] && t.values[1] >= t.values[0];
        out.push(outcome(
            "table-symmetry-unimodality",
            sym <= 1e-10 && unimodal,
            format!("max rank asymmetry {sym:.2e}"),
        ));
    }

    // median sequence increases and starts at 1/2
    {
        let x = DistributionSpec::logistic(0.0, 1.0).unwrap();
        let seq = pc_median_sequence(4, &x, &x)?;
        let increasing = seq.windows(2).all(|w| w[1] > w[0] + 1e-9);
        let starts_even = (seq[0] - 0.5).abs() <= 1e-8;
        out.push(outcome(
            "median-monotonicity",
            increasing && starts_even,
            format!("sequence {seq:?}"),
        ));
    }

    // uniform-normal support threshold
    {
        let a0 = uniform_normal_threshold();
        out.push(outcome(
            "uniform-normal-threshold",
            (a0 - 1.47).abs() <= 0.01,
            format!("a0 = {a0:.6}"),
        ));
    }

    // quadrature vs Monte Carlo oracle
    {
        let x = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let y = DistributionSpec::uniform(0.0, 2.0).unwrap();
        let quad = pc_quadrature(&x, &y)?.probability;
        let mc = mc_pc(
            &EstimatorSpec::Draw(x),
            &EstimatorSpec::Draw(y),
            &[],
            0.0,
            reps,
            seed,
        )?;
        let sig = mc.sigmas_from(quad);
        out.push(outcome(
            "oracle-agreement",
            sig <= sigma_tol,
            format!("|quad - mc| = {sig:.2} sigma"),
        ));

        let closed = pc_beta_generated(1.0)?;
        let mc = mc_pc(
            &EstimatorSpec::Median {
                d: DistributionSpec::normal(0.0, 1.0).unwrap(),
                n: 3,
            },
            &EstimatorSpec::Draw(DistributionSpec::normal(0.0, 1.0).unwrap()),
            &[],
            0.0,
            reps,
            seed + 1,
        )?;
        let sig = mc.sigmas_from(closed);
        out.push(outcome(
            "oracle-agreement-median3",
            sig <= sigma_tol,
            format!("|closed - mc| = {sig:.2} sigma"),
        ));
    }

    // seed determinism of the oracle
    {
        let x = EstimatorSpec::Draw(DistributionSpec::normal(0.0, 1.0).unwrap());
        let a = mc_pc(&x, &x, &[], 0.0, crate::mc_oracle::MIN_REPS, seed)?;
        let b = mc_pc(&x, &x, &[], 0.0, crate::mc_oracle::MIN_REPS, seed)?;
        out.push(outcome(
            "mc-determinism",
            a.p_hat == b.p_hat && a.ties == b.ties,
            "identical seeds reproduce bitwise".into(),
        ));
    }

    Ok(out)
}

fn builtin_specs() -> Vec<DistributionSpec> {
    let normal = DistributionSpec::normal(0.0, 1.0).unwrap();
    vec![
        DistributionSpec::uniform(0.0, 1.0).unwrap(),
        normal.clone(),
        DistributionSpec::logistic(0.0, 1.0).unwrap(),
        DistributionSpec::laplace(0.0, 1.0).unwrap(),
        DistributionSpec::beta_generated(1.0, normal.clone()).unwrap(),
        DistributionSpec::mixture(
            vec![
                DistributionSpec::beta_generated(1.0, normal.clone()).unwrap(),
                DistributionSpec::beta_generated(2.0, normal).unwrap(),
            ],
            vec![0.5, 0.5],
        )
        .unwrap(),
    ]
}
