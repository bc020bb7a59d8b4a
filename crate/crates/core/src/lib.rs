//! Pitman-closeness probabilities for symmetrically distributed estimators.
//!
//! Two estimators of the same center are compared by the probability that
//! one lands strictly nearer the true value than the other. This crate
//! computes that probability by adaptive quadrature for symmetric
//! distribution pairs, provides the closed forms and threshold conditions
//! that characterize when one side wins, specializes the machinery to order
//! statistics (rank tables, sample medians, beta-generated closed forms),
//! simulates median and randomized-median ranked-set-sampling designs, and
//! cross-checks everything against a brute-force Monte Carlo oracle with
//! counter-based reproducible streams.

pub mod cli;
pub mod distributions;
pub mod error;
pub mod mc_oracle;
pub mod orderstats;
pub mod pitman;
pub mod quad;
pub mod rng;
pub mod roots;
pub mod rss;
pub mod verify;

pub use distributions::DistributionSpec;
pub use error::{Error, Result};
pub use mc_oracle::{mc_pc, EstimatorSpec, McEstimate};
pub use orderstats::{
    pc_beta_generated, pc_median_sequence, pc_order_stat, pc_parent_vs_beta_generated, pc_table,
    reg_inc_beta, OrderStatSpec, PcTable,
};
pub use pitman::{
    pc_convex_combination, pc_midpoint_vs_weighted, pc_quadrature, pc_randomized,
    threshold_condition, threshold_condition_dual, uniform_normal_threshold, ConditionReport,
    Method, PcResult, Verdict,
};
pub use rss::{compare_designs, DesignComparison, RssScheme};
