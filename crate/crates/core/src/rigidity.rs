//! Recovering an ellipse from a few values of β.
//!
//! Two reconstructions are provided. The first uses the diameter `β(1/2) = 2a`
//! and one more value `β(m/n)`; `b` is then the unique root of a map that is
//! strictly increasing in `b`. The second uses `β(1/4) = √(a² + b²)` together
//! with the table's circumference, which is strictly decreasing in
//! `C = a² − b²` at fixed `a² + b²`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::sqrt;

use crate::beta::beta_of_rho;
use crate::conics::Ellipse;
use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};
use crate::roots::{self, Stop};

/// A rotation number `m/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub m: u32,
    pub n: u32,
}

impl Rational {
    /// `m/n` with `0 < m/n < 1/2`.
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || 2 * m >= n {
            return Err(Error::InvalidArgument("rotation number m/n must lie in (0, 1/2)"));
        }
        Ok(Rational { m, n })
    }

    pub fn value(&self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovery {
    pub ellipse: Ellipse,
    /// Residual of the scalar equation solved last.
    pub residual: f64,
    /// The map that was inverted was found strictly monotone on a check
    /// grid spanning the bracket.
    pub monotone: bool,
}

/// Points in the per-run monotonicity check.
const CHECK_GRID: usize = 24;

/// `b ↦ β_{(a,b)}(ρ)` on a grid of `b` between `lo` and `hi`; true when
/// strictly increasing.
pub fn certify_beta_monotone_in_b(a: f64, rho: f64, lo: f64, hi: f64, grid: usize) -> Result<bool> {
    let mut prev = f64::NEG_INFINITY;
    for i in 0..grid {
        let b = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
        let v = beta_of_rho(&Ellipse::new(a, b)?, rho)?.beta;
        if !(v > prev) {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}

/// The ellipse with `β(1/2) = beta_half` and `β(ρ₂) = beta2`.
///
/// `a = beta_half/2`; `b` is found by bracketed root finding on
/// `(ε, a(1 − 1e-6))`, the lower end starting at `1e-3·a` and shrinking
/// towards `1e-9·a` if the target lies below it. Where `ρ₂` is out of reach
/// for flat tables the lower end is raised instead.
pub fn recover_from_diameter_pair(beta_half: f64, rho2: Rational, beta2: f64) -> Result<Recovery> {
    if !(beta_half > 0.0 && beta_half.is_finite()) || !(beta2 > 0.0 && beta2.is_finite()) {
        return Err(Error::InvalidArgument("beta values must be positive and finite"));
    }
    let a = 0.5 * beta_half;
    let rho = rho2.value();
    let beta_at = |b: f64| -> Result<f64> { Ok(beta_of_rho(&Ellipse::new(a, b)?, rho)?.beta) };
    let hi = a * (1.0 - 1e-6);
    let g_hi = beta_at(hi)?;
    // very flat tables cannot reach ρ₂ inside the λ guard; start above them
    let mut lo = 1e-3 * a;
    let mut g_lo = loop {
        match beta_at(lo) {
            Ok(v) => break v,
            Err(Error::RhoOutOfRange { .. }) if 2.0 * lo < hi => lo *= 2.0,
            Err(e) => return Err(e),
        }
    };
    let raised = lo > 1e-3 * a;
    while !raised && g_lo > beta2 && lo > 1e-9 * a {
        lo *= 0.1;
        g_lo = beta_at(lo)?;
    }
    if !(g_lo <= beta2 && beta2 <= g_hi) {
        return Err(Error::NoSolution { target: beta2, lo: g_lo, hi: g_hi });
    }
    let stop = Stop { value_tol: 0.0, x_tol: 1e-12, max_iter: 300 };
    let mut failure = None;
    let root = roots::solve_bracketed(
        |b| match beta_at(b) {
            Ok(v) => v - beta2,
            Err(e) => {
                failure = Some(e);
                f64::NAN
            }
        },
        lo,
        hi,
        stop,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let monotone = certify_beta_monotone_in_b(a, rho, lo, hi, CHECK_GRID)?;
    Ok(Recovery { ellipse: Ellipse::new(a, root.x)?, residual: root.residual, monotone })
}

/// Circumference as a function of `C = a² − b²` at fixed `A = a² + b²`:
/// `√2 ∫₀^π √(A + C cos t) dt`, by adaptive quadrature.
pub fn circumference_integral(big_a: f64, c: f64) -> Result<f64> {
    let r = quadrature::integrate(|t| sqrt(big_a + c * libm::cos(t)), 0.0, PI, Tolerance::default())?;
    Ok(core::f64::consts::SQRT_2 * r.value)
}

fn ellipse_from_sum_diff(big_a: f64, c: f64) -> Result<Ellipse> {
    Ellipse::new(sqrt(0.5 * (big_a + c)), sqrt(0.5 * (big_a - c)))
}

/// The ellipse with `β(1/4) = beta_quarter` and the given circumference.
///
/// Attainable circumferences at `A = beta_quarter²` lie strictly between
/// `4√A` (the doubled segment, `b → 0`) and `π√(2A)` (the circle, which is
/// not an admissible table).
pub fn recover_from_quarter_and_length(beta_quarter: f64, circumference: f64) -> Result<Recovery> {
    if !(beta_quarter > 0.0 && beta_quarter.is_finite()) || !circumference.is_finite() {
        return Err(Error::InvalidArgument("beta_quarter and circumference must be positive and finite"));
    }
    let big_a = beta_quarter * beta_quarter;
    let sup = PI * sqrt(2.0 * big_a);
    let inf = 4.0 * sqrt(big_a);
    if !(circumference > inf && circumference < sup * (1.0 - 4.0 * f64::EPSILON)) {
        return Err(Error::NoSolution { target: circumference, lo: inf, hi: sup });
    }
    let lo = big_a * 1e-12;
    let hi = big_a * (1.0 - 1e-15);
    let perimeter = |c: f64| ellipse_from_sum_diff(big_a, c).map(|e| e.perimeter());
    let (p_lo, p_hi) = (perimeter(lo)?, perimeter(hi)?);
    if !(p_hi <= circumference && circumference <= p_lo) {
        return Err(Error::NoSolution { target: circumference, lo: p_hi, hi: p_lo });
    }
    let stop = Stop { value_tol: 0.0, x_tol: 1e-15, max_iter: 300 };
    let root = roots::solve_bracketed(
        |c| perimeter(c).map(|p| p - circumference).unwrap_or(f64::NAN),
        lo,
        hi,
        stop,
    )?;
    let report = certify_circumference_monotonicity(big_a, 8)?;
    Ok(Recovery {
        ellipse: ellipse_from_sum_diff(big_a, root.x)?,
        residual: root.residual,
        monotone: report.strictly_decreasing,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    /// `(C, f(C))` on the grid.
    pub samples: Vec<(f64, f64)>,
    /// Largest `f(C_{i+1}) − f(C_i)`; negative when the check passes.
    pub max_forward_difference: f64,
    /// `π√(2A)`, the limit at `C → 0⁺`.
    pub supremum: f64,
    pub strictly_decreasing: bool,
}

/// Evaluates the circumference integral at `C_i = A·i/(grid + 1)`,
/// `i = 1..=grid`, and checks it strictly decreases.
pub fn certify_circumference_monotonicity(big_a: f64, grid: usize) -> Result<MonotonicityReport> {
    if !(big_a > 0.0 && big_a.is_finite()) {
        return Err(Error::InvalidArgument("A must be positive and finite"));
    }
    if grid < 3 {
        return Err(Error::InvalidArgument("grid must have at least 3 points"));
    }
    let mut samples = Vec::with_capacity(grid);
    for i in 1..=grid {
        let c = big_a * i as f64 / (grid + 1) as f64;
        samples.push((c, circumference_integral(big_a, c)?));
    }
    let max_forward_difference = samples
        .windows(2)
        .map(|w| w[1].1 - w[0].1)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MonotonicityReport {
        samples,
        max_forward_difference,
        supremum: PI * sqrt(2.0 * big_a),
        strictly_decreasing: max_forward_difference < 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::approx_eq;

    #[test]
    fn diameter_pair_square() {
        let r = recover_from_diameter_pair(4.0, Rational::new(1, 4).unwrap(), sqrt(5.0)).unwrap();
        assert!(approx_eq(r.ellipse.a(), 2.0, 1e-15));
        assert!(approx_eq(r.ellipse.b(), 1.0, 1e-10));
        assert!(r.monotone);
    }

    #[test]
    fn diameter_pair_out_of_range() {
        let q = Rational::new(1, 4).unwrap();
        assert!(matches!(recover_from_diameter_pair(4.0, q, 3.0), Err(Error::NoSolution { .. })));
        assert!(recover_from_diameter_pair(4.0, q, -1.0).is_err());
        assert!(Rational::new(1, 2).is_err());
        assert!(Rational::new(0, 3).is_err());
    }

    #[test]
    fn quarter_and_length() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        let r = recover_from_quarter_and_length(sqrt(5.0), e.perimeter()).unwrap();
        assert!(approx_eq(r.ellipse.a(), 2.0, 1e-12));
        assert!(approx_eq(r.ellipse.b(), 1.0, 1e-12));
        let circle = PI * sqrt(10.0);
        assert!(recover_from_quarter_and_length(sqrt(5.0), circle).is_err());
        assert!(recover_from_quarter_and_length(sqrt(5.0), 4.0 * sqrt(5.0)).is_err());
    }

    #[test]
    fn circumference_integral_matches_perimeter() {
        let e = Ellipse::new(2.0, 1.0).unwrap();
        assert!(approx_eq(circumference_integral(5.0, 3.0).unwrap(), e.perimeter(), 1e-14));
    }

    #[test]
    fn monotonicity_report() {
        let r = certify_circumference_monotonicity(5.0, 50).unwrap();
        assert!(r.strictly_decreasing);
        assert!(r.samples[0].1 < r.supremum);
        let r3 = certify_circumference_monotonicity(2.0, 3).unwrap();
        assert_eq!(r3.samples.len(), 3);
        assert!(r3.max_forward_difference < 0.0);
        assert!(certify_circumference_monotonicity(2.0, 2).is_err());
    }
}
