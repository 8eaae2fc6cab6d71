//! One-dimensional search helpers.

use crate::error::{Error, Result};

/// Iteration cap shared by the searches below.
pub const MAX_ITERATIONS: usize = 200;

/// Golden-section minimisation of a unimodal `f` on `[lo, hi]` until the
/// bracket is narrower than `tol`. Returns the midpoint of the final bracket
/// and the number of iterations used.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, usize)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for iteration in 0..=MAX_ITERATIONS {
        if hi - lo <= tol {
            return Ok((0.5 * (lo + hi), iteration));
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Root of `g` on `[lo, hi]` by bisection, given `g(lo) ≥ 0 ≥ g(hi)` or the
/// reverse.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (g_lo, g_hi) = (g(lo), g(hi));
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::OutOfRange("bisection bracket does not change sign".into()));
    }
    let lo_sign = g_lo.signum();
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}
