//! Order-statistic Pitman-closeness machinery.
//!
//! The cdf of the i-th order statistic of n i.i.d. draws is the regularized
//! incomplete beta I_u(i, n-i+1) evaluated at the parent cdf, which for
//! integer arguments equals the binomial tail sum
//! sum_{r=i}^n C(n,r) u^r (1-u)^{n-r}. Both routes are implemented: the
//! continued fraction serves general (a, b), the tail sum doubles as an exact
//! integer shortcut and as an internal cross-check of the fraction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::pitman::{self, PcResult};
use crate::quad::{integrate_segmented, Tolerance};

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Beta(a, b) density at `u` in (0, 1).
///
/// Small integer shapes use direct powers with 1/B(a, b) accumulated as a
/// product of factorial ratios; this is the hot path of inverse-cdf sampling
/// for beta-generated specs with integer exponent.
pub fn beta_pdf(a: f64, b: f64, u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    if a >= 1.0 && b >= 1.0 && a.fract() == 0.0 && b.fract() == 0.0 && a + b <= 34.0 {
        let (ia, ib) = (a as i32, b as i32);
        // 1/B(a,b) = C(a+b-2, a-1) * (a+b-1)
        let mut inv_beta = (ia + ib - 1) as f64;
        let mut num = (ib) as f64;
        for k in 1..ia {
            inv_beta *= num / k as f64;
            num += 1.0;
        }
        return inv_beta * u.powi(ia - 1) * (1.0 - u).powi(ib - 1);
    }
    ((a - 1.0) * u.ln() + (b - 1.0) * (1.0 - u).ln() - ln_beta(a, b)).exp()
}

fn is_small_integer_pair(a: f64, b: f64) -> bool {
    a >= 1.0 && b >= 1.0 && a.fract() == 0.0 && b.fract() == 0.0 && a + b - 1.0 <= 30.0
}

/// Regularized incomplete beta I_u(a, b).
///
/// Integer (a, b) with a + b - 1 <= 30 dispatch to the exact binomial tail
/// sum; everything else goes through the continued fraction with the
/// symmetry I_u(a, b) = 1 - I_{1-u}(b, a).
pub fn reg_inc_beta(a: f64, b: f64, u: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "incomplete beta requires a, b > 0, got ({a}, {b})"
        )));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!(
            "incomplete beta requires u in [0, 1], got {u}"
        )));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u == 1.0 {
        return Ok(1.0);
    }
    if a == b && u == 0.5 {
        return Ok(0.5);
    }
    if is_small_integer_pair(a, b) {
        let i = a as usize;
        let n = (a + b - 1.0) as usize;
        return Ok(binomial_tail(i, n, u));
    }
    continued_fraction(a, b, u)
}

/// sum_{r=i}^{n} C(n, r) u^r (1-u)^{n-r} for 1 <= i <= n <= 30.
fn binomial_tail(i: usize, n: usize, u: f64) -> f64 {
    debug_assert!(i >= 1 && i <= n && n <= 30);
    let v = 1.0 - u;
    // first term C(n, i) u^i v^{n-i}, then the ratio recurrence in r
    let mut coeff = 1.0f64;
    for k in 0..i {
        coeff *= (n - k) as f64 / (i - k) as f64;
    }
    let mut term = coeff * u.powi(i as i32) * v.powi((n - i) as i32);
    let mut sum = term;
    for r in i..n {
        if term == 0.0 {
            break;
        }
        term *= ((n - r) as f64 / (r + 1) as f64) * (u / v);
        sum += term;
    }
    sum.clamp(0.0, 1.0)
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn continued_fraction(a: f64, b: f64, u: f64) -> Result<f64> {
    // switch tails so the fraction converges quickly
    if u > (a + 1.0) / (a + b + 2.0) {
        return Ok(1.0 - continued_fraction(b, a, 1.0 - u)?);
    }
    let prefix = (a * u.ln() + b * (1.0 - u).ln() - ln_beta(a, b)).exp() / a;

    const TINY: f64 = 1e-300;
    const MAX_ITER: usize = 500;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;

    let mut c = 1.0f64;
    let mut d = 1.0 - qab * u / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;

    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;

        let aa = mf * (b - mf) * u / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        let aa = -(a + mf) * (qab + mf) * u / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 2.0 * f64::EPSILON {
            return Ok((prefix * h).clamp(0.0, 1.0));
        }
    }
    Err(Error::NonConvergence(format!(
        "incomplete-beta continued fraction stalled at a={a}, b={b}, u={u}"
    )))
}

/// Inverse of `reg_inc_beta` in `u` for fixed (a, b).
///
/// Newton iteration safeguarded by a shrinking bracket; never fails for
/// p in [0, 1] since bisection alone converges.
pub fn reg_inc_beta_inv(a: f64, b: f64, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "inverse incomplete beta requires p in [0, 1], got {p}"
        )));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    if a == b && p == 0.5 {
        return Ok(0.5);
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut u = a / (a + b);
    for _ in 0..120 {
        let f = reg_inc_beta(a, b, u)? - p;
        if f.abs() <= 1e-14 {
            return Ok(u);
        }
        if f > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let d = beta_pdf(a, b, u);
        let newton = u - f / d;
        u = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < f64::EPSILON {
            return Ok(u);
        }
    }
    Ok(u)
}

/// The i-th order statistic of an i.i.d. sample of size n.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderStatSpec {
    pub parent: DistributionSpec,
    pub i: usize,
    pub n: usize,
}

impl OrderStatSpec {
    pub fn new(parent: DistributionSpec, i: usize, n: usize) -> Result<Self> {
        if n < 1 || i < 1 || i > n {
            return Err(Error::Domain(format!(
                "order statistic rank must satisfy 1 <= i <= n, got i={i}, n={n}"
            )));
        }
        Ok(Self { parent, i, n })
    }

    /// cdf of the order statistic: I_{F(x)}(i, n-i+1).
    pub fn cdf(&self, x: f64) -> f64 {
        let u = self.parent.cdf(x);
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        reg_inc_beta(self.i as f64, (self.n - self.i + 1) as f64, u)
            .expect("rank parameters validated at construction")
    }
}

fn require_same_setting(x: &DistributionSpec, y: &DistributionSpec) -> Result<()> {
    if x.center() != y.center() {
        return Err(Error::CenterMismatch(x.center(), y.center()));
    }
    let (a, b) = (x.support_half_width(), y.support_half_width());
    if a != b {
        return Err(Error::SupportMismatch(format!(
            "order-statistic comparison requires a common support \
             (half-widths {a} vs {b})"
        )));
    }
    Ok(())
}

/// Density ratio g*(u) = pdf_Y(Q_X(u)) / pdf_X(Q_X(u)) at the u-quantile
/// of X, for u in (1/2, 1). X and Y must share center and support.
pub fn quantile_density_ratio(
    x: &DistributionSpec,
    y: &DistributionSpec,
    u: f64,
) -> Result<f64> {
    require_same_setting(x, y)?;
    if !(u > 0.5 && u < 1.0) {
        return Err(Error::Domain(format!(
            "density ratio is defined for u in (1/2, 1), got {u}"
        )));
    }
    let q = x.quantile(u)?;
    let fx = x.pdf(q);
    if fx == 0.0 {
        return Err(Error::NonConvergence(format!(
            "pdf of X vanishes at its {u}-quantile; ratio is singular"
        )));
    }
    Ok(y.pdf(q) / fx)
}

/// P(|X_{i:n} - center| < |Y - center|): the chance the order statistic
/// lands nearer the common center than an independent draw of Y.
///
/// Computed as 2 * int_{1/2}^1 g*(u) [I_u(i, n-i+1) - I_{1-u}(i, n-i+1)] du.
/// The ratio g* may blow up at u -> 1 (integrably); the result is accepted
/// only if halving the quadrature tolerance moves it by less than 1e-7.
pub fn pc_order_stat(
    i: usize,
    n: usize,
    x: &DistributionSpec,
    y: &DistributionSpec,
) -> Result<f64> {
    if n < 1 || i < 1 || i > n {
        return Err(Error::Domain(format!(
            "rank must satisfy 1 <= i <= n, got i={i}, n={n}"
        )));
    }
    require_same_setting(x, y)?;

    let a = i as f64;
    let b = (n - i + 1) as f64;
    let center = x.center();
    let integrand = |u: f64| {
        let q = x.quantile(u).expect("u interior");
        let fx = x.pdf(q);
        if fx == 0.0 {
            // support boundary; the bracket below vanishes there too
            return 0.0;
        }
        let g = y.pdf(q) / fx;
        let tail = reg_inc_beta(a, b, u).expect("validated rank")
            - reg_inc_beta(a, b, 1.0 - u).expect("validated rank");
        2.0 * g * tail
    };

    let mut points = vec![0.5];
    for e in x.finite_edges().into_iter().chain(y.finite_edges()) {
        let u = x.cdf(center + e);
        if u > 0.5 && u < 1.0 {
            points.push(u);
        }
    }
    points.push(1.0);
    points.sort_by(|p, q| p.partial_cmp(q).unwrap());
    points.dedup();

    let tol = Tolerance::default();
    let coarse = integrate_segmented(&integrand, &points, tol)?;
    let fine = integrate_segmented(&integrand, &points, tol.halved())?;
    if (coarse.value - fine.value).abs() > 1e-7 {
        return Err(Error::NonConvergence(format!(
            "order-statistic integral unstable under tolerance halving \
             ({} vs {})",
            coarse.value, fine.value
        )));
    }
    Ok(fine.value.clamp(0.0, 1.0))
}

/// Closed-form PC probability of the beta-generated member against its
/// parent: 2 - 4 H(alpha) with H(alpha) = (1 - I_{1/2}(alpha+2, alpha+1))/2.
///
/// Increasing in alpha with value 1/2 at alpha = 0. For the sample median of
/// 2m-1 draws this is the alpha = m-1 case.
pub fn pc_beta_generated(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "closed form requires alpha >= 0, got {alpha}; use quadrature for \
             the tail-heavy branch"
        )));
    }
    let h = 0.5 * (1.0 - reg_inc_beta(alpha + 2.0, alpha + 1.0, 0.5)?);
    Ok(2.0 - 4.0 * h)
}

/// PC probability that the parent is closer to the center than its
/// beta-generated transform with alpha in (-1, 0], by quadrature.
/// The parent is Pitman closest within that exponent range.
pub fn pc_parent_vs_beta_generated(
    alpha: f64,
    parent: &DistributionSpec,
) -> Result<PcResult> {
    if !(alpha > -1.0 && alpha <= 0.0) {
        return Err(Error::Domain(format!(
            "expected alpha in (-1, 0], got {alpha}"
        )));
    }
    let transformed = DistributionSpec::beta_generated(alpha, parent.clone())?;
    pitman::pc_quadrature(parent, &transformed)
}

/// Table of `pc_order_stat(i, n, ..)` for i = 1..=n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcTable {
    pub n: usize,
    pub values: Vec<f64>,
    pub x: DistributionSpec,
    pub y: DistributionSpec,
}

impl PcTable {
    /// CSV with columns `i,pi`, probabilities to 10 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,pi\n");
        for (k, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{:.9e}\n", k + 1, v));
        }
        out
    }
}

/// Build the full rank table; ranks are evaluated in parallel and the
/// result does not depend on evaluation order.
pub fn pc_table(n: usize, x: &DistributionSpec, y: &DistributionSpec) -> Result<PcTable> {
    if n < 1 {
        return Err(Error::Domain("table size must be at least 1".into()));
    }
    let values = (1..=n)
        .into_par_iter()
        .map(|i| pc_order_stat(i, n, x, y))
        .collect::<Result<Vec<f64>>>()?;
    Ok(PcTable {
        n,
        values,
        x: x.clone(),
        y: y.clone(),
    })
}

/// PC of the sample median of 2m-1 draws against Y, for m = 1..=m_max.
/// Strictly increasing in m.
pub fn pc_median_sequence(
    m_max: usize,
    x: &DistributionSpec,
    y: &DistributionSpec,
) -> Result<Vec<f64>> {
    if m_max < 1 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    (1..=m_max)
        .into_par_iter()
        .map(|m| pc_order_stat(m, 2 * m - 1, x, y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u01() -> DistributionSpec {
        DistributionSpec::uniform(0.0, 1.0).unwrap()
    }

    #[test]
    fn closed_form_families() {
        // I_u(1, n) = 1 - (1-u)^n
        let v = reg_inc_beta(1.0, 3.0, 0.5).unwrap();
        assert!((v - 0.875).abs() < 1e-15);
        // I_{1/2}(2, 1) = integral of 2t on (0, 1/2) = 1/4
        assert!((reg_inc_beta(2.0, 1.0, 0.5).unwrap() - 0.25).abs() < 1e-15);
        // I_{1/2}(3, 2) = 5/16
        assert!((reg_inc_beta(3.0, 2.0, 0.5).unwrap() - 0.3125).abs() < 1e-15);
    }

    #[test]
    fn continued_fraction_matches_binomial_tail() {
        // the [i, n] identity, CF path checked against the exact tail sum
        for n in 1..=12usize {
            for i in 1..=n {
                for k in 1..=19 {
                    let u = k as f64 / 20.0;
                    let cf = continued_fraction(i as f64, (n - i + 1) as f64, u).unwrap();
                    let tail = binomial_tail(i, n, u);
                    assert!(
                        (cf - tail).abs() <= 1e-12,
                        "i={i} n={n} u={u}: cf={cf} tail={tail}"
                    );
                }
            }
        }
    }

    #[test]
    fn beta_pdf_integer_path_matches_log_path() {
        for (a, b) in [(1.0, 1.0), (2.0, 2.0), (3.0, 7.0), (12.0, 5.0)] {
            for k in 1..=19 {
                let u = k as f64 / 20.0;
                let fast = beta_pdf(a, b, u);
                let slow =
                    ((a - 1.0) * u.ln() + (b - 1.0) * (1.0 - u).ln() - ln_beta(a, b)).exp();
                assert!(
                    (fast - slow).abs() <= 1e-12 * slow.max(1.0),
                    "a={a} b={b} u={u}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn symmetry_relation() {
        for (a, b) in [(0.5, 0.5), (1.5, 3.2), (7.0, 0.7), (2.0, 2.0)] {
            for k in 1..=9 {
                let u = k as f64 / 10.0;
                let lhs = reg_inc_beta(a, b, u).unwrap();
                let rhs = 1.0 - reg_inc_beta(b, a, 1.0 - u).unwrap();
                assert!((lhs - rhs).abs() < 1e-13, "a={a} b={b} u={u}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(reg_inc_beta(0.0, 1.0, 0.5).is_err());
        assert!(reg_inc_beta(1.0, -1.0, 0.5).is_err());
        assert!(reg_inc_beta(1.0, 1.0, 1.5).is_err());
        assert!(reg_inc_beta_inv(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        for (a, b) in [(0.5, 0.5), (2.0, 2.0), (1.5, 4.0), (9.0, 3.0)] {
            for k in 1..=39 {
                let p = k as f64 / 40.0;
                let u = reg_inc_beta_inv(a, b, p).unwrap();
                let back = reg_inc_beta(a, b, u).unwrap();
                assert!((back - p).abs() <= 1e-12, "a={a} b={b} p={p}: {back}");
            }
        }
    }

    #[test]
    fn orderstat_cdf_examples() {
        let s = OrderStatSpec::new(u01(), 1, 1).unwrap();
        assert!((s.cdf(0.25) - u01().cdf(0.25)).abs() < 1e-15);
        // maximum of two: F^2
        let s = OrderStatSpec::new(u01(), 2, 2).unwrap();
        assert!((s.cdf(0.0) - 0.25).abs() < 1e-15);
        // minimum of two: 1 - (1-F)^2
        let s = OrderStatSpec::new(u01(), 1, 2).unwrap();
        assert!((s.cdf(0.0) - 0.75).abs() < 1e-15);
        assert!(OrderStatSpec::new(u01(), 3, 2).is_err());
    }

    #[test]
    fn orderstat_median_is_symmetric() {
        let s = OrderStatSpec::new(
            DistributionSpec::logistic(0.5, 1.0).unwrap(),
            3,
            5,
        )
        .unwrap();
        for k in 1..=30 {
            let t = k as f64 * 0.2;
            let sum = s.cdf(0.5 - t) + s.cdf(0.5 + t);
            assert!((sum - 1.0).abs() < 1e-12, "t={t}: {sum}");
        }
    }

    #[test]
    fn density_ratio_examples() {
        let x = DistributionSpec::normal(0.0, 1.0).unwrap();
        assert!((quantile_density_ratio(&x, &x, 0.7).unwrap() - 1.0).abs() < 1e-12);

        let y = DistributionSpec::normal(0.0, 2.0).unwrap();
        let r = quantile_density_ratio(&x, &y, 0.5 + 1e-12).unwrap();
        assert!((r - 0.5).abs() < 1e-9, "ratio at center {r}");

        // X uniform, Y its alpha=1 transform: ratio at the center quantile
        // is f_Y(0)/f_X(0) = 0.75/0.5 = 1.5 (scale-free in the width)
        let x = u01();
        let y = DistributionSpec::beta_generated(1.0, x.clone()).unwrap();
        let r = quantile_density_ratio(&x, &y, 0.5 + 1e-12).unwrap();
        assert!((r - 1.5).abs() < 1e-9, "{r}");

        assert!(quantile_density_ratio(&x, &y, 0.4).is_err());
        let z = DistributionSpec::uniform(0.0, 2.0).unwrap();
        assert!(quantile_density_ratio(&x, &z, 0.7).is_err());
    }

    #[test]
    fn pc_order_stat_exchangeable_single() {
        let x = u01();
        let v = pc_order_stat(1, 1, &x, &x).unwrap();
        assert!((v - 0.5).abs() < 1e-10, "{v}");
    }

    #[test]
    fn pc_order_stat_uniform_hand_values() {
        // against the parent, bracket integrals are polynomials:
        // pi_{1:3} = 2 int (u^3 - (1-u)^3) du = 7/16, pi_{2:3} = 5/8
        let x = u01();
        let v13 = pc_order_stat(1, 3, &x, &x).unwrap();
        assert!((v13 - 0.4375).abs() < 1e-9, "{v13}");
        let v23 = pc_order_stat(2, 3, &x, &x).unwrap();
        assert!((v23 - 0.625).abs() < 1e-9, "{v23}");
        let v33 = pc_order_stat(3, 3, &x, &x).unwrap();
        assert!((v13 - v33).abs() < 1e-10);
    }

    #[test]
    fn pc_order_stat_matches_closed_form_for_medians() {
        let p = DistributionSpec::normal(0.0, 1.0).unwrap();
        for m in 1..=4usize {
            let quad = pc_order_stat(m, 2 * m - 1, &p, &p).unwrap();
            let closed = pc_beta_generated((m - 1) as f64).unwrap();
            assert!(
                (quad - closed).abs() <= 1e-8,
                "m={m}: quad {quad} vs closed {closed}"
            );
        }
    }

    #[test]
    fn pc_order_stat_rejects_mismatches() {
        let x = u01();
        let y = DistributionSpec::uniform(0.0, 2.0).unwrap();
        assert!(matches!(
            pc_order_stat(1, 3, &x, &y),
            Err(Error::SupportMismatch(_))
        ));
        let z = DistributionSpec::uniform(0.5, 1.0).unwrap();
        assert!(matches!(
            pc_order_stat(1, 3, &x, &z),
            Err(Error::CenterMismatch(_, _))
        ));
        assert!(pc_order_stat(0, 3, &x, &x).is_err());
        assert!(pc_order_stat(4, 3, &x, &x).is_err());
    }

    #[test]
    fn closed_form_beta_generated_values() {
        assert!((pc_beta_generated(0.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((pc_beta_generated(1.0).unwrap() - 0.625).abs() < 1e-12);
        // frozen from the closed form evaluated at high precision
        assert!((pc_beta_generated(0.5).unwrap() - 0.575586818421612).abs() < 1e-12);
        assert!((pc_beta_generated(2.0).unwrap() - 0.6875).abs() < 1e-12);
        assert!(pc_beta_generated(2.0).unwrap() > pc_beta_generated(1.0).unwrap());
        assert!(pc_beta_generated(-0.5).is_err());
    }

    #[test]
    fn parent_beats_tail_heavy_transform() {
        let p = DistributionSpec::normal(0.0, 1.0).unwrap();
        let r = pc_parent_vs_beta_generated(-0.5, &p).unwrap();
        // 2/pi, frozen from the arcsine closed form
        assert!((r.probability - 0.636619772368).abs() < 1e-6, "{}", r.probability);
        let r0 = pc_parent_vs_beta_generated(0.0, &p).unwrap();
        assert!((r0.probability - 0.5).abs() < 1e-9);
        let mid = pc_parent_vs_beta_generated(-0.25, &p).unwrap();
        assert!(mid.probability > 0.5 && mid.probability < 0.636619772368);
        assert!(pc_parent_vs_beta_generated(-1.0, &p).is_err());
        assert!(pc_parent_vs_beta_generated(0.5, &p).is_err());
    }

    #[test]
    fn table_shapes() {
        let x = u01();
        let t3 = pc_table(3, &x, &x).unwrap();
        assert!(t3.values[1] >= t3.values[0]);
        assert!((t3.values[0] - t3.values[2]).abs() < 1e-10);
        let t4 = pc_table(4, &x, &x).unwrap();
        assert!((t4.values[1] - t4.values[2]).abs() < 1e-10);
        assert!(t4.values[1] > t4.values[0]);
        assert!((t4.values[0] - t4.values[3]).abs() < 1e-10);
        let t1 = pc_table(1, &x, &x).unwrap();
        assert!((t1.values[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn table_csv_format() {
        let x = u01();
        let t = pc_table(2, &x, &x).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("i,pi"));
        assert!(lines.next().unwrap().starts_with("1,"));
    }

    #[test]
    fn median_sequence_increases() {
        let p = DistributionSpec::normal(0.0, 1.0).unwrap();
        let seq = pc_median_sequence(6, &p, &p).unwrap();
        let expected = [0.5, 0.625, 0.6875, 0.7265625, 0.75390625, 0.7744140625];
        for (v, e) in seq.iter().zip(expected) {
            assert!((v - e).abs() < 1e-8, "{v} vs {e}");
        }
        for w in seq.windows(2) {
            assert!(w[1] - w[0] > 1e-9);
        }
    }
}
