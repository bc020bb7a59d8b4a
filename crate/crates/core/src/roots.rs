//! Bracketed root finding: Brent's method and a bisection/secant cdf inverter.

use crate::error::{Error, Result};

/// Brent's method on `[a, b]`; requires a sign change.
///
/// Converges to within `xtol + rtol * |x|`; the scipy defaults
/// (`xtol = 2e-12`, `rtol = 4 eps`) are a good starting point.
pub fn brent<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    xtol: f64,
    rtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut xpre = a;
    let mut xcur = b;
    let mut fpre = f(xpre);
    let mut fcur = f(xcur);
    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    if fpre * fcur > 0.0 {
        return Err(Error::NonConvergence(format!(
            "no sign change on [{a}, {b}]"
        )));
    }

    let mut xblk = 0.0;
    let mut fblk = 0.0;
    let mut spre = 0.0;
    let mut scur = 0.0;

    for _ in 0..max_iter {
        if fpre * fcur < 0.0 {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = (xtol + rtol * xcur.abs()) / 2.0;
        let sbis = (xblk - xcur) / 2.0;
        if fcur == 0.0 || sbis.abs() < delta {
            return Ok(xcur);
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic interpolation
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
    }
    Err(Error::NonConvergence(format!(
        "root iteration limit reached on [{a}, {b}]"
    )))
}

/// Solve `f(x) = target` for nondecreasing `f` on the bracket `[lo, hi]`.
///
/// Bisection with a secant step whenever the secant candidate stays inside
/// the current bracket; stops when `|f(x) - target| <= ftol` or after
/// `max_iter` iterations (200 by convention for cdf inversion).
pub fn invert_monotone<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    target: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo) - target;
    let mut fhi = f(hi) - target;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::NonConvergence(format!(
            "target {target} not bracketed by [{lo}, {hi}]"
        )));
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        // secant through the bracket endpoints, falling back to bisection
        let sec = lo - flo * (hi - lo) / (fhi - flo);
        x = if sec.is_finite() && sec > lo && sec < hi {
            sec
        } else {
            0.5 * (lo + hi)
        };
        let fx = f(x) - target;
        if fx.abs() <= ftol || (hi - lo).abs() <= f64::EPSILON * (1.0 + x.abs()) {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        // keep the bracket shrinking even when the secant stalls at one end
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid) - target;
        if fmid.abs() <= ftol {
            return Ok(mid);
        }
        if fmid < 0.0 {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    Ok(x)
}
