//! Pitman-closeness probabilities for pairs of symmetric estimators.
//!
//! For X and Y independent and symmetric about a common center, the chance
//! that X lands strictly nearer the center,
//!
//!   P(|X - c| < |Y - c|) = 2 ∫_0^b (2 F_X(t) - 1) g_Y(t) dt,
//!
//! is computed by adaptive quadrature after the substitution u = G_Y(t),
//! which maps any support (finite or not) onto (1/2, 1). The module also
//! provides executable forms of the threshold conditions that characterize
//! "X is Pitman closer" (with their 5/8 and 3/8 constants), peakedness and
//! half-line dominance checks, convex-combination and randomized-estimator
//! results, and the uniform-vs-normal support threshold.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::quad::{integrate_segmented, Tolerance};
use crate::roots::brent;

/// Probabilities within this distance of 1/2 are reported Indeterminate so
/// quadrature noise cannot flip boundary verdicts.
pub const DECISION_MARGIN: f64 = 1e-6;

/// Slack applied to pointwise grid inequalities.
const GRID_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    ClosedForm,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FirstCloser,
    SecondCloser,
    Indeterminate,
}

impl Verdict {
    /// Verdict for a PC probability: first closer iff p >= 1/2 + margin.
    pub fn from_probability(p: f64) -> Self {
        if p >= 0.5 + DECISION_MARGIN {
            Verdict::FirstCloser
        } else if p <= 0.5 - DECISION_MARGIN {
            Verdict::SecondCloser
        } else {
            Verdict::Indeterminate
        }
    }
}

/// A Pitman-closeness probability with provenance and diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcResult {
    pub probability: f64,
    pub method: Method,
    pub abs_error_estimate: f64,
    pub closer: Verdict,
}

impl PcResult {
    pub fn new(probability: f64, method: Method, abs_error_estimate: f64) -> Self {
        Self {
            probability,
            method,
            abs_error_estimate,
            closer: Verdict::from_probability(probability),
        }
    }
}

/// Which inequality a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    /// ∫ F_X g_Y dt against G_Y(a) - 5/8 (narrower X) or 3/8.
    CdfThreshold,
    /// Equivalent dual form ∫ G_Y f_X dt against F_X(b) - 5/8 or 3/8.
    DualCdfThreshold,
    /// Skew condition plus one-sided cdf dominance on a grid.
    OneSidedDominance,
    /// Var(X) <= Var(Y), necessary for X more peaked than Y.
    VarianceOrdering,
}

/// How the first spec's support compares to the second's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportRelation {
    FirstNarrower,
    FirstWider,
    EqualWidth,
}

fn support_relation(x: &DistributionSpec, y: &DistributionSpec) -> SupportRelation {
    let (a, b) = (x.support_half_width(), y.support_half_width());
    if a < b {
        SupportRelation::FirstNarrower
    } else if a > b {
        SupportRelation::FirstWider
    } else {
        SupportRelation::EqualWidth
    }
}

/// Evaluation of one closeness inequality: both sides, the signed margin
/// (nonnegative iff the first spec is Pitman closer), and the verdict with
/// the same indeterminacy band as `PcResult`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: ConditionKind,
    pub branch: SupportRelation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub verdict: Verdict,
}

impl ConditionReport {
    fn new(
        condition: ConditionKind,
        branch: SupportRelation,
        lhs: f64,
        rhs: f64,
        margin: f64,
        margin_to_probability: f64,
    ) -> Self {
        // margin relates linearly to PC - 1/2; verdicts share one band
        let p_equiv = 0.5 + margin * margin_to_probability;
        Self {
            condition,
            branch,
            lhs,
            rhs,
            margin,
            holds: margin >= 0.0,
            verdict: Verdict::from_probability(p_equiv),
        }
    }
}

fn require_common_center(x: &DistributionSpec, y: &DistributionSpec) -> Result<f64> {
    if x.center() != y.center() {
        return Err(Error::CenterMismatch(x.center(), y.center()));
    }
    Ok(x.center())
}

fn require_equal_support(x: &DistributionSpec, y: &DistributionSpec) -> Result<()> {
    let (a, b) = (x.support_half_width(), y.support_half_width());
    if a != b {
        return Err(Error::SupportMismatch(format!(
            "operation requires a shared support (half-widths {a} vs {b})"
        )));
    }
    Ok(())
}

/// Interior breakpoints in u-space for kinks of `inner(u) = cdf(q(u))`:
/// the u at which a quantile path crosses a finite support edge.
fn edge_breakpoints(
    u_of_offset: impl Fn(f64) -> f64,
    offsets: impl IntoIterator<Item = f64>,
    lo: f64,
    hi: f64,
) -> Vec<f64> {
    let mut pts = Vec::new();
    for e in offsets {
        let u = u_of_offset(e);
        if u > lo && u < hi {
            pts.push(u);
        }
    }
    pts
}

fn assemble_points(lo: f64, hi: f64, mut interior: Vec<f64>) -> Vec<f64> {
    interior.push(lo);
    interior.push(hi);
    interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
    interior.dedup();
    interior
}

/// P(|X - c| < |Y - c|) for independent X, Y symmetric about the common
/// center c, by adaptive quadrature.
pub fn pc_quadrature(x: &DistributionSpec, y: &DistributionSpec) -> Result<PcResult> {
    pc_quadrature_tol(x, y, Tolerance::default())
}

pub fn pc_quadrature_tol(
    x: &DistributionSpec,
    y: &DistributionSpec,
    tol: Tolerance,
) -> Result<PcResult> {
    let center = require_common_center(x, y)?;
    let integrand = |u: f64| {
        let t = y.quantile(u).expect("u interior");
        2.0 * (2.0 * x.cdf(t) - 1.0)
    };
    let edges: Vec<f64> = x.finite_edges().into_iter().chain(y.finite_edges()).collect();
    let interior = edge_breakpoints(|e| y.cdf(center + e), edges, 0.5, 1.0);
    let points = assemble_points(0.5, 1.0, interior);
    let q = integrate_segmented(integrand, &points, tol)?;
    Ok(PcResult::new(
        q.value.clamp(0.0, 1.0),
        Method::Quadrature,
        q.abs_error,
    ))
}

/// Necessary-and-sufficient threshold condition for "X Pitman closer than Y"
/// in terms of ∫ F_X(t) g_Y(t) dt over the half-line.
///
/// Narrower X (half-width a < b): the integral over (0, a) must reach
/// G_Y(a) - 5/8. Otherwise the integral over (0, b) must reach 3/8.
/// `margin = lhs - rhs`, and 4 * margin = PC - 1/2.
pub fn threshold_condition(
    x: &DistributionSpec,
    y: &DistributionSpec,
) -> Result<ConditionReport> {
    let center = require_common_center(x, y)?;
    let branch = support_relation(x, y);
    let edges: Vec<f64> = x.finite_edges().into_iter().chain(y.finite_edges()).collect();

    let (hi, rhs) = match branch {
        SupportRelation::FirstNarrower => {
            let ga = y.cdf(center + x.support_half_width());
            (ga, ga - 0.625)
        }
        _ => (1.0, 0.375),
    };
    let integrand = |u: f64| {
        let t = y.quantile(u).expect("u interior");
        x.cdf(t)
    };
    let interior = edge_breakpoints(|e| y.cdf(center + e), edges, 0.5, hi);
    let points = assemble_points(0.5, hi, interior);
    let q = integrate_segmented(integrand, &points, Tolerance::default())?;
    let lhs = q.value;
    Ok(ConditionReport::new(
        ConditionKind::CdfThreshold,
        branch,
        lhs,
        rhs,
        lhs - rhs,
        4.0,
    ))
}

/// Equivalent dual form of `threshold_condition` using ∫ G_Y(t) f_X(t) dt.
///
/// Wider X (a > b): the integral over (0, b) must stay below F_X(b) - 5/8.
/// Otherwise the integral over (0, a) must stay below 3/8.
/// `margin = rhs - lhs`, and 4 * margin = PC - 1/2.
pub fn threshold_condition_dual(
    x: &DistributionSpec,
    y: &DistributionSpec,
) -> Result<ConditionReport> {
    let center = require_common_center(x, y)?;
    let branch = support_relation(x, y);
    let edges: Vec<f64> = x.finite_edges().into_iter().chain(y.finite_edges()).collect();

    let (hi, rhs) = match branch {
        SupportRelation::FirstWider => {
            let fb = x.cdf(center + y.support_half_width());
            (fb, fb - 0.625)
        }
        _ => (1.0, 0.375),
    };
    let integrand = |u: f64| {
        let t = x.quantile(u).expect("u interior");
        y.cdf(t)
    };
    let interior = edge_breakpoints(|e| x.cdf(center + e), edges, 0.5, hi);
    let points = assemble_points(0.5, hi, interior);
    let q = integrate_segmented(integrand, &points, Tolerance::default())?;
    let lhs = q.value;
    Ok(ConditionReport::new(
        ConditionKind::DualCdfThreshold,
        branch,
        lhs,
        rhs,
        rhs - lhs,
        4.0,
    ))
}

/// Default comparison grid: 512 Chebyshev-spaced offsets on (0, w) where w is
/// the smaller effective support half-width (0.9999-quantile offset for
/// unbounded supports), plus far-tail offsets at the 0.9, 0.99 and 0.999
/// quantiles of Y.
pub fn default_grid(x: &DistributionSpec, y: &DistributionSpec) -> Vec<f64> {
    let effective = |d: &DistributionSpec| {
        let a = d.support_half_width();
        if a.is_finite() {
            a
        } else {
            d.quantile(0.9999).expect("interior p") - d.center()
        }
    };
    let w = effective(x).min(effective(y));
    let n = 512usize;
    let mut grid: Vec<f64> = (1..=n)
        .map(|k| {
            // Chebyshev points of (0, w), clustered at both ends
            let theta = (2.0 * k as f64 - 1.0) / (2.0 * n as f64) * std::f64::consts::PI;
            0.5 * w * (1.0 - theta.cos())
        })
        .filter(|t| *t > 0.0)
        .collect();
    for p in [0.9, 0.99, 0.999] {
        let t = y.quantile(p).expect("interior p") - y.center();
        if t > 0.0 {
            grid.push(t);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

/// X more peaked than Y about the common center:
/// P(|X - c| <= t) >= P(|Y - c| <= t) at every grid offset.
pub fn is_more_peaked(
    x: &DistributionSpec,
    y: &DistributionSpec,
    grid: &[f64],
) -> Result<bool> {
    require_common_center(x, y)?;
    if grid.is_empty() {
        return Err(Error::Domain("peakedness grid must be non-empty".into()));
    }
    Ok(grid
        .iter()
        .all(|&t| x.central_prob(t) >= y.central_prob(t) - GRID_SLACK))
}

/// Half-line cdf dominance F_X(c + t) >= G_Y(c + t) for all grid offsets
/// t >= 0; sufficient for "X Pitman closer" when X's support is no wider.
pub fn dominates_on_half_line(
    x: &DistributionSpec,
    y: &DistributionSpec,
    grid: &[f64],
) -> Result<bool> {
    let center = require_common_center(x, y)?;
    if x.support_half_width() > y.support_half_width() {
        return Err(Error::SupportMismatch(format!(
            "dominance check requires the first support inside the second \
             ({} > {})",
            x.support_half_width(),
            y.support_half_width()
        )));
    }
    if grid.is_empty() {
        return Err(Error::Domain("dominance grid must be non-empty".into()));
    }
    Ok(grid
        .iter()
        .all(|&t| x.cdf(center + t) >= y.cdf(center + t) - GRID_SLACK))
}

/// Variance ordering Var(X) <= Var(Y): necessary for X to be more peaked.
pub fn variance_ordering(
    x: &DistributionSpec,
    y: &DistributionSpec,
) -> Result<ConditionReport> {
    require_common_center(x, y)?;
    let vx = x.variance()?;
    let vy = y.variance()?;
    let margin = vy - vx;
    Ok(ConditionReport {
        condition: ConditionKind::VarianceOrdering,
        branch: support_relation(x, y),
        lhs: vx,
        rhs: vy,
        margin,
        holds: margin >= 0.0,
        verdict: if margin.abs() <= 1e-12 {
            Verdict::Indeterminate
        } else if margin > 0.0 {
            Verdict::FirstCloser
        } else {
            Verdict::SecondCloser
        },
    })
}

/// P(|w X + (1-w) Y - c| < |Y - c|): the convex combination against its own
/// second component (the pair is dependent through Y).
///
/// Conditional on |Y| = t the combination lands inside iff X lies in
/// (-(2-w)/w * t, t), giving
/// 2 ∫ [F_X(t) - F_X(-(2-w)/w t)] g_Y(t) dt over the half-line.
/// At w = 0 the estimator coincides with Y; the non-strict reading yields
/// probability 1 and the verdict is reported Indeterminate.
pub fn pc_convex_combination(
    x: &DistributionSpec,
    y: &DistributionSpec,
    omega: f64,
) -> Result<PcResult> {
    if !(0.0..1.0).contains(&omega) {
        return Err(Error::Domain(format!(
            "convex weight must lie in [0, 1), got {omega}"
        )));
    }
    let center = require_common_center(x, y)?;
    require_equal_support(x, y)?;
    if omega == 0.0 {
        return Ok(PcResult {
            probability: 1.0,
            method: Method::ClosedForm,
            abs_error_estimate: 0.0,
            closer: Verdict::Indeterminate,
        });
    }
    let ratio = (2.0 - omega) / omega;
    let integrand = |u: f64| {
        let t = y.quantile(u).expect("u interior") - center;
        2.0 * (x.cdf(center + t) - x.cdf(center - ratio * t))
    };
    let mut interior = Vec::new();
    for e in x.finite_edges() {
        // F_X(c + t) saturates at t = e; F_X(c - ratio t) at t = e / ratio
        for t in [e, e / ratio] {
            let u = y.cdf(center + t);
            if u > 0.5 && u < 1.0 {
                interior.push(u);
            }
        }
    }
    for e in y.finite_edges() {
        let u = y.cdf(center + e);
        if u > 0.5 && u < 1.0 {
            interior.push(u);
        }
    }
    let points = assemble_points(0.5, 1.0, interior);
    let q = integrate_segmented(integrand, &points, Tolerance::default())?;
    Ok(PcResult::new(
        q.value.clamp(0.0, 1.0),
        Method::Quadrature,
        q.abs_error,
    ))
}

/// P(|(X1 + X2)/2 - c| <= |w X1 + (1-w) X2 - c|) for X1, X2 i.i.d. from `p`:
/// the midpoint is Pitman closest among convex combinations.
///
/// Two-branch reduction: with s = (2w-3)/(2w+1) for w < 1/2 and its
/// reciprocal for w > 1/2, the probability is
/// 2 ∫ [F(t) - F(s t)] f(t) dt over the half-line (s < 0). At w = 1/2 the
/// two estimators coincide; non-strict reading gives probability 1,
/// reported Indeterminate.
pub fn pc_midpoint_vs_weighted(p: &DistributionSpec, omega: f64) -> Result<PcResult> {
    if !(0.0..1.0).contains(&omega) {
        return Err(Error::Domain(format!(
            "convex weight must lie in [0, 1), got {omega}"
        )));
    }
    if omega == 0.5 {
        return Ok(PcResult {
            probability: 1.0,
            method: Method::ClosedForm,
            abs_error_estimate: 0.0,
            closer: Verdict::Indeterminate,
        });
    }
    let center = p.center();
    let slope = if omega < 0.5 {
        (2.0 * omega - 3.0) / (2.0 * omega + 1.0)
    } else {
        (2.0 * omega + 1.0) / (2.0 * omega - 3.0)
    };
    let integrand = |u: f64| {
        let t = p.quantile(u).expect("u interior") - center;
        2.0 * (u - p.cdf(center + slope * t))
    };
    let mut interior = Vec::new();
    for e in p.finite_edges() {
        for t in [e, e / slope.abs()] {
            let u = p.cdf(center + t);
            if u > 0.5 && u < 1.0 {
                interior.push(u);
            }
        }
    }
    let points = assemble_points(0.5, 1.0, interior);
    let q = integrate_segmented(integrand, &points, Tolerance::default())?;
    Ok(PcResult::new(
        q.value.clamp(0.0, 1.0),
        Method::Quadrature,
        q.abs_error,
    ))
}

/// PC of a Bernoulli(zeta) randomization between two estimators against a
/// common competitor: zeta * pi_x + (1 - zeta) * pi_y, where pi_x and pi_y
/// are each estimator's own PC probability against that competitor.
/// At least 1/2 whenever both inputs are.
pub fn pc_randomized(pi_x: f64, pi_y: f64, zeta: f64) -> Result<f64> {
    for (name, v) in [("pi_x", pi_x), ("pi_y", pi_y), ("zeta", zeta)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!(
                "{name} must be a probability in [0, 1], got {v}"
            )));
        }
    }
    Ok(zeta * pi_x + (1.0 - zeta) * pi_y)
}

/// Largest randomization weight on the weaker estimator that keeps the
/// randomized estimator Pitman closer: a / (a + b), where the stronger
/// estimator wins with probability 1/2 + a and the weaker with 1/2 - b.
pub fn max_randomization(a: f64, b: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(v > 0.0 && v <= 0.5) {
            return Err(Error::Domain(format!(
                "{name} must lie in (0, 1/2], got {v}"
            )));
        }
    }
    Ok(a / (a + b))
}

fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Largest uniform half-width a0 for which Uniform(c, a) is still Pitman
/// closer to c than Normal(c, 1): the positive root of
/// h(a) = a (Phi(a) - 3/4) + phi(a) - phi(0), approximately 1.47.
///
/// h is convex with h(0) = 0, so the root on [0.5, 3] is unique; Brent
/// bracketing plus a Newton polish pushes |h(a0)| below 1e-12.
pub fn uniform_normal_threshold() -> f64 {
    let h = |a: f64| a * (std_normal_cdf(a) - 0.75) + std_normal_pdf(a) - std_normal_pdf(0.0);
    let mut root = brent(h, 0.5, 3.0, 1e-13, 4.0 * f64::EPSILON, 200)
        .expect("sign change on [0.5, 3] is guaranteed by convexity");
    for _ in 0..4 {
        let hv = h(root);
        if hv.abs() <= 1e-13 {
            break;
        }
        let slope = std_normal_cdf(root) - 0.75;
        root -= hv / slope;
    }
    root
}

/// Relaxed-symmetry check: X need only have location `c = center of Y`
/// with no heavier lower tail, P(X < c - t) <= P(X > c + t). If additionally
/// F_X dominates G_Y on t >= 0 (condition i) or is dominated on t <= 0
/// (condition ii), X is Pitman closer to c than Y.
///
/// X may be a spec centered elsewhere (a shifted symmetric variable is the
/// way to build a skewed input here); Y is symmetric about c. Supports must
/// coincide as intervals, which for a shifted X requires unbounded support.
/// The reported lhs/rhs pair is the worst (smallest-margin) grid comparison
/// of the better-satisfied dominance condition.
pub fn one_sided_pc_check(
    x: &DistributionSpec,
    y: &DistributionSpec,
    grid: &[f64],
) -> Result<ConditionReport> {
    if grid.is_empty() {
        return Err(Error::Domain("grid must be non-empty".into()));
    }
    let center = y.center();
    let (ax, ay) = (x.support_half_width(), y.support_half_width());
    let same_interval = if ax.is_infinite() && ay.is_infinite() {
        true
    } else {
        ax == ay && x.center() == center
    };
    if !same_interval {
        return Err(Error::SupportMismatch(
            "one-sided check requires identical supports".into(),
        ));
    }

    let mut skew_ok = true;
    // worst-margin trackers for each dominance direction
    let mut worst_i = (f64::INFINITY, 0.0, 0.0);
    let mut worst_ii = (f64::INFINITY, 0.0, 0.0);
    for &t in grid {
        let lower = x.cdf(center - t);
        let upper = 1.0 - x.cdf(center + t);
        if lower > upper + GRID_SLACK {
            skew_ok = false;
        }
        let (fx, gy) = (x.cdf(center + t), y.cdf(center + t));
        if fx - gy < worst_i.0 {
            worst_i = (fx - gy, fx, gy);
        }
        let (fxm, gym) = (x.cdf(center - t), y.cdf(center - t));
        if gym - fxm < worst_ii.0 {
            worst_ii = (gym - fxm, fxm, gym);
        }
    }
    let cond_i = worst_i.0 >= -GRID_SLACK;
    let cond_ii = worst_ii.0 >= -GRID_SLACK;
    let holds = skew_ok && (cond_i || cond_ii);
    let best = if worst_i.0 >= worst_ii.0 { worst_i } else { worst_ii };
    let margin = if skew_ok { best.0 } else { best.0.min(-1.0) };
    Ok(ConditionReport {
        condition: ConditionKind::OneSidedDominance,
        branch: support_relation(x, y),
        lhs: best.1,
        rhs: best.2,
        margin,
        holds,
        verdict: if holds && margin > GRID_SLACK {
            Verdict::FirstCloser
        } else {
            Verdict::Indeterminate
        },
    })
}
