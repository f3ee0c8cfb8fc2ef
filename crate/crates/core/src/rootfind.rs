//! Bracketed scalar root finding: secant steps kept inside a sign-change
//! bracket, falling back to bisection whenever a secant step leaves the
//! bracket or fails to halve it.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub max_iterations: usize,
    /// Stop once the bracket is narrower than this.
    pub width_tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            width_tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: usize,
    /// Final bracket.
    pub lo: f64,
    pub hi: f64,
}

pub fn find_root<F>(mut f: F, lo: f64, hi: f64, opts: &RootOptions) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;

    if f_lo == 0.0 {
        return Ok(Root { x: lo, iterations: 0, lo, hi: lo });
    }
    if f_hi == 0.0 {
        return Ok(Root { x: hi, iterations: 0, lo: hi, hi });
    }
    if !(f_lo.signum() != f_hi.signum()) {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
    }

    let mut force_bisection = false;
    for iteration in 1..=opts.max_iterations {
        let width = hi - lo;
        let secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
        let used_secant = !force_bisection && secant > lo && secant < hi && secant.is_finite();
        let x = if used_secant { secant } else { lo + 0.5 * width };

        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(Root { x, iterations: iteration, lo: x, hi: x });
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }

        // one-sided secant convergence stalls the bracket
        force_bisection = used_secant && (hi - lo) > 0.5 * width;

        if hi - lo < opts.width_tol {
            let x = if f_lo.abs() <= f_hi.abs() { lo } else { hi };
            return Ok(Root { x, iterations: iteration, lo, hi });
        }
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iterations,
        lo,
        hi,
    })
}

/// Number of sign changes of `f` over `points` evenly spaced samples of
/// `[lo, hi]`, endpoints included. Exact zeros are skipped, so a zero between
/// opposite signs counts once.
pub fn count_sign_changes<F>(mut f: F, lo: f64, hi: f64, points: usize) -> Result<usize>
where
    F: FnMut(f64) -> Result<f64>,
{
    if points < 2 {
        return Err(Error::InvalidInput(format!(
            "a sign sweep needs at least two points, got {points}"
        )));
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut last_sign = 0.0;
    let mut changes = 0;
    for i in 0..points {
        let x = if i + 1 == points { hi } else { lo + step * i as f64 };
        let fx = f(x)?;
        if fx == 0.0 {
            continue;
        }
        let sign = fx.signum();
        if last_sign != 0.0 && sign != last_sign {
            changes += 1;
        }
        last_sign = sign;
    }
    Ok(changes)
}
