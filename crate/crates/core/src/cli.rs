//! Command-line front end.
//!
//! Commands: `pc`, `pi-table`, `pi-median-seq`, `rss-sim`, `threshold`,
//! `verify`. Distribution inputs are JSON documents, given either as file
//! paths or inline (arguments starting with `{`). Monte Carlo commands
//! require an explicit `--seed`; there is no wall-clock default, so output
//! is byte-identical for identical invocations.
//!
//! Exit codes: 0 success, 1 failed verification, 2 unusable input,
//! 3 numerical non-convergence.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::orderstats;
use crate::pitman::{self, ConditionReport, PcResult};
use crate::quad::Tolerance;
use crate::rss::{self, RssScheme};
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "pitman",
    version,
    about = "Pitman-closeness probabilities for symmetric estimators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// PC probability of X against Y plus both threshold-condition reports.
    Pc {
        /// Distribution spec: JSON file path or inline JSON.
        x: String,
        /// Distribution spec: JSON file path or inline JSON.
        y: String,
        /// Absolute quadrature tolerance override (relative = 100x this).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// PC of each order statistic of an n-sample of X against Y.
    PiTable {
        n: usize,
        x: String,
        y: String,
    },
    /// PC of the sample median of 2m-1 draws of X against Y, m = 1..=m_max.
    PiMedianSeq {
        m_max: usize,
        x: String,
        y: String,
    },
    /// Monte Carlo comparison of two sampling designs on one parent.
    ///
    /// Schemes: median-rss:N (odd N), randomized-median-rss:N[:zeta]
    /// (even N), srs-median:N, srs-mean:N.
    RssSim {
        scheme_a: String,
        scheme_b: String,
        /// Parent distribution: JSON file path or inline JSON.
        parent: String,
        /// Master seed (required; no wall-clock default).
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        reps: u64,
    },
    /// Print a named numerical threshold. Targets: uniform-normal.
    Threshold { target: String },
    /// Run the invariant verification suites; exits 1 on any failure.
    Verify {
        /// Master seed (required; no wall-clock default).
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        /// Allowed |quadrature - MC| distance in MC standard errors.
        #[arg(long, default_value_t = 3.5)]
        tol: f64,
    },
}

fn load_spec(arg: &str) -> Result<DistributionSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| {
            Error::InvalidDistribution(format!("cannot read spec file {arg}: {e}"))
        })?
    };
    DistributionSpec::from_json(&text)
}

#[derive(Serialize)]
struct PcReport {
    #[serde(flatten)]
    pc: PcResult,
    threshold_condition: ConditionReport,
    dual_condition: ConditionReport,
}

#[derive(Serialize)]
struct MedianSeqReport {
    m_max: usize,
    values: Vec<f64>,
    x: DistributionSpec,
    y: DistributionSpec,
}

#[derive(Serialize)]
struct ThresholdReport {
    target: String,
    value: f64,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NonConvergence(_) => 3,
                _ => 2,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Pc { x, y, tol } => {
            let x = load_spec(x)?;
            let y = load_spec(y)?;
            let tolerance = match tol {
                Some(t) => {
                    if !(t.is_finite() && *t > 0.0) {
                        return Err(Error::Domain(format!("--tol must be positive, got {t}")));
                    }
                    Tolerance {
                        abs: *t,
                        rel: *t * 100.0,
                    }
                }
                None => Tolerance::default(),
            };
            let report = PcReport {
                pc: pitman::pc_quadrature_tol(&x, &y, tolerance)?,
                threshold_condition: pitman::threshold_condition(&x, &y)?,
                dual_condition: pitman::threshold_condition_dual(&x, &y)?,
            };
            let text = match cli.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from(
                        "probability,method,abs_error_estimate,closer,\
                         threshold_holds,threshold_margin,dual_holds,dual_margin\n",
                    );
                    s.push_str(&format!(
                        "{:.9e},{},{:.9e},{},{},{:.9e},{},{:.9e}\n",
                        report.pc.probability,
                        tag(&report.pc.method),
                        report.pc.abs_error_estimate,
                        tag(&report.pc.closer),
                        report.threshold_condition.holds,
                        report.threshold_condition.margin,
                        report.dual_condition.holds,
                        report.dual_condition.margin,
                    ));
                    s
                }
            };
            Ok((text, 0))
        }

        Command::PiTable { n, x, y } => {
            let x = load_spec(x)?;
            let y = load_spec(y)?;
            let table = orderstats::pc_table(*n, &x, &y)?;
            let text = match cli.format {
                Format::Json => to_json(&table),
                Format::Csv => table.to_csv(),
            };
            Ok((text, 0))
        }

        Command::PiMedianSeq { m_max, x, y } => {
            let x = load_spec(x)?;
            let y = load_spec(y)?;
            let values = orderstats::pc_median_sequence(*m_max, &x, &y)?;
            let text = match cli.format {
                Format::Json => to_json(&MedianSeqReport {
                    m_max: *m_max,
                    values,
                    x,
                    y,
                }),
                Format::Csv => {
                    let mut s = String::from("m,pi\n");
                    for (k, v) in values.iter().enumerate() {
                        s.push_str(&format!("{},{:.9e}\n", k + 1, v));
                    }
                    s
                }
            };
            Ok((text, 0))
        }

        Command::RssSim {
            scheme_a,
            scheme_b,
            parent,
            seed,
            reps,
        } => {
            let a: RssScheme = scheme_a.parse()?;
            let b: RssScheme = scheme_b.parse()?;
            let d = load_spec(parent)?;
            let cmp = rss::compare_designs(&a, &b, &d, *reps, *seed)?;
            let text = match cli.format {
                Format::Json => to_json(&cmp),
                Format::Csv => {
                    let mut s = String::from(
                        "scheme_a,scheme_b,reps,seed,p_hat,std_err,ties,low_reps_warning\n",
                    );
                    s.push_str(&format!(
                        "{},{},{},{},{:.9e},{:.9e},{},{}\n",
                        cmp.scheme_a,
                        cmp.scheme_b,
                        cmp.reps,
                        cmp.seed,
                        cmp.p_hat,
                        cmp.std_err,
                        cmp.ties,
                        cmp.low_reps_warning,
                    ));
                    s
                }
            };
            Ok((text, 0))
        }

        Command::Threshold { target } => {
            if target != "uniform-normal" {
                return Err(Error::Domain(format!(
                    "unknown threshold target \"{target}\" (expected uniform-normal)"
                )));
            }
            let value = pitman::uniform_normal_threshold();
            let text = match cli.format {
                Format::Json => to_json(&ThresholdReport {
                    target: target.clone(),
                    value,
                }),
                Format::Csv => format!("target,value\n{target},{value:.9e}\n"),
            };
            Ok((text, 0))
        }

        Command::Verify { seed, reps, tol } => {
            let outcomes = verify::run_all(*seed, *reps, *tol)?;
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            let text = match cli.format {
                Format::Json => to_json(
                    &outcomes
                        .iter()
                        .map(|o| {
                            serde_json::json!({
                                "name": o.name,
                                "pass": o.pass,
                                "details": o.details,
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => {
                    let mut s = String::from("status,name,details\n");
                    for o in &outcomes {
                        let status = if o.pass { "PASS" } else { "FAIL" };
                        s.push_str(&format!(
                            "{status},{},\"{}\"\n",
                            o.name,
                            o.details.replace('"', "'")
                        ));
                    }
                    s.push_str(&format!(
                        "{},summary,\"{} of {} properties passed\"\n",
                        if failed == 0 { "PASS" } else { "FAIL" },
                        outcomes.len() - failed,
                        outcomes.len()
                    ));
                    s
                }
            };
            Ok((text, if failed == 0 { 0 } else { 1 }))
        }
    }
}

fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .expect("enum serializes")
        .as_str()
        .expect("enum tags are strings")
        .to_string()
}
