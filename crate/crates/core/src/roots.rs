//! Bracketed root finding for monotone scalar maps.
//!
//! Bisection safeguarding secant (false-position) steps: a secant proposal
//! is taken only if it lands strictly inside the bracket and the previous
//! step shrank the bracket by at least half; otherwise the midpoint is used.

use libm::fabs;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `g(x)` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Stop {
    /// Stop once `|g(x)| <= value_tol`.
    pub value_tol: f64,
    /// Stop once the bracket is narrower than `x_tol·max(1, |x|)`.
    pub x_tol: f64,
    pub max_iter: usize,
}

impl Default for Stop {
    fn default() -> Self {
        Stop { value_tol: 0.0, x_tol: 1e-15, max_iter: 300 }
    }
}

/// Finds a zero of `g` in `[lo, hi]`. `g(lo)` and `g(hi)` must not have the
/// same strict sign; otherwise [`Error::NoSolution`] is returned with the
/// two end values.
pub fn solve_bracketed<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, stop: Stop) -> Result<Root> {
    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (g(a), g(b));
    if ga == 0.0 {
        return Ok(Root { x: a, residual: 0.0, iterations: 0 });
    }
    if gb == 0.0 {
        return Ok(Root { x: b, residual: 0.0, iterations: 0 });
    }
    if !(ga.signum() != gb.signum()) {
        return Err(Error::NoSolution { target: 0.0, lo: ga, hi: gb });
    }
    let mut best = if fabs(ga) < fabs(gb) { (a, ga) } else { (b, gb) };
    let mut last_width = fabs(b - a);
    let mut use_secant = true;
    for it in 1..=stop.max_iter {
        let secant = b - gb * (b - a) / (gb - ga);
        let x = if use_secant && secant > a.min(b) && secant < a.max(b) {
            secant
        } else {
            0.5 * (a + b)
        };
        if x == a || x == b {
            // adjacent floats: the bracket cannot shrink further
            return Ok(Root { x: best.0, residual: best.1, iterations: it });
        }
        let gx = g(x);
        if fabs(gx) < fabs(best.1) {
            best = (x, gx);
        }
        if gx == 0.0 || fabs(gx) <= stop.value_tol {
            return Ok(Root { x, residual: gx, iterations: it });
        }
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
        } else {
            b = x;
            gb = gx;
        }
        let width = fabs(b - a);
        if width <= stop.x_tol * fabs(best.0).max(1.0) {
            return Ok(Root { x: best.0, residual: best.1, iterations: it });
        }
        use_secant = width <= 0.5 * last_width;
        last_width = width;
    }
    if fabs(best.1) <= stop.value_tol {
        Ok(Root { x: best.0, residual: best.1, iterations: stop.max_iter })
    } else {
        Err(Error::RootNotConverged { residual: best.1 })
    }
}
