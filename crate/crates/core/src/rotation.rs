//! Invariant measure on an invariant curve and the rotation number.
//!
//! On the invariant curve of the caustic `E_λ`, parametrised by the outer
//! normal `ψ` at the reflection point, the billiard map preserves
//!
//! ```text
//! dμ = dψ / ( h(ψ) √(1 − J² h(ψ)²) )
//! ```
//!
//! and the rotation number is `μ([ψ, Tψ]) / μ(curve)`. Both reduce to the
//! first-kind integral `F(·, 1/f)`.

use core::f64::consts::{FRAC_PI_2, PI};

use libm::{asin, atan2, cos, fabs, floor, sin, sqrt};

use crate::conics::{CausticParam, Ellipse};
use crate::elliptic;
use crate::error::{Error, Result};
use crate::quadrature::{self, Tolerance};
use crate::roots::{self, Stop};

/// Threshold on `k'²` below which [`MeasureChart::near_divergent`] is set.
const DIVERGENCE_KC2: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureChart {
    pub caustic: CausticParam,
    /// `U = (4/(cf)) K(1/f)`, the measure of the whole curve.
    pub total_u: f64,
    /// Set when `k'² < 1e-8`: `K` is in its logarithmic regime and `U`
    /// blows up as the caustic collapses onto the focal segment.
    pub near_divergent: bool,
}

/// Density of the invariant measure with respect to `dψ`.
pub fn density(ellipse: &Ellipse, caustic: &CausticParam, psi: f64) -> f64 {
    let h = ellipse.support(psi);
    let jh = caustic.joachimsthal() * h;
    1.0 / (h * sqrt((1.0 - jh) * (1.0 + jh)))
}

/// `μ([0, ψ]) = F(φ, 1/f)/(cf)` for `ψ ∈ [0, π/2]`, where
/// `sin²φ = (d+1) sin²ψ / (sin²ψ + d)`.
pub fn mu_arc(ellipse: &Ellipse, caustic: &CausticParam, psi: f64) -> Result<f64> {
    if !(psi >= 0.0 && psi <= FRAC_PI_2 * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::InvalidArgument("mu_arc: psi must lie in [0, pi/2]"));
    }
    Ok(mu_arc_unchecked(ellipse, caustic, psi.min(FRAC_PI_2)))
}

fn mu_arc_unchecked(ellipse: &Ellipse, caustic: &CausticParam, psi: f64) -> f64 {
    let d = caustic.d();
    let (s, c) = (fabs(sin(psi)), fabs(cos(psi)));
    // tan φ = √(d+1) sin ψ / (√d cos ψ); at ψ = π/2 this is φ = π/2.
    let amp = atan2(sqrt(d + 1.0) * s, sqrt(d) * c);
    let scale = ellipse.c() * caustic.f();
    elliptic::first_kind_sc(sin(amp), cos(amp), caustic.kc2()) / scale
}

/// `μ([0, ψ])` for any real `ψ`, extended by the symmetries of the density
/// (it depends on `sin²ψ` only); odd in `ψ`.
pub fn mu_cumulative(ellipse: &Ellipse, caustic: &CausticParam, psi: f64) -> f64 {
    let quarter_u = total_u(ellipse, caustic) / 4.0;
    let q = floor(psi / FRAC_PI_2);
    let r = psi - q * FRAC_PI_2;
    let r = r.clamp(0.0, FRAC_PI_2);
    let qi = q as i64;
    if qi.rem_euclid(2) == 0 {
        q * quarter_u + mu_arc_unchecked(ellipse, caustic, r)
    } else {
        (q + 1.0) * quarter_u - mu_arc_unchecked(ellipse, caustic, FRAC_PI_2 - r)
    }
}

/// `μ([ψ₁, ψ₂])` along the direction of increasing `ψ`, unreduced.
pub fn mu_between(ellipse: &Ellipse, caustic: &CausticParam, psi1: f64, psi2: f64) -> f64 {
    mu_cumulative(ellipse, caustic, psi2) - mu_cumulative(ellipse, caustic, psi1)
}

fn total_u(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    4.0 * elliptic::complete_first_kc(caustic.kc2()) / (ellipse.c() * caustic.f())
}

/// Total invariant measure `U = (4/(cf)) F(π/2, 1/f)`.
pub fn total_measure(ellipse: &Ellipse, caustic: &CausticParam) -> MeasureChart {
    MeasureChart {
        caustic: *caustic,
        total_u: total_u(ellipse, caustic),
        near_divergent: caustic.kc2() < DIVERGENCE_KC2,
    }
}

/// `ρ = F(φ, k) / (2K(k))` with `φ = arcsin(√λ/b)`, `k = 1/f`.
pub fn rotation_number(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    let (s, c) = caustic.amplitude_sc(ellipse);
    let kc2 = caustic.kc2();
    elliptic::first_kind_sc(s, c, kc2) / (2.0 * elliptic::complete_first_kc(kc2))
}

/// The rotation number through the angle-sum integral
///
/// ```text
/// ρ = (4/(πU)) ∫₀^{π/2} arcsin(J h) / (h √(1 − J²h²)) dψ,
/// ```
///
/// with `U` also obtained by quadrature of the density. Independent of the
/// elliptic kernel.
pub fn rotation_number_quadrature(ellipse: &Ellipse, caustic: &CausticParam) -> Result<f64> {
    let j = caustic.joachimsthal();
    let tol = Tolerance { abs: 0.0, rel: 1e-13, max_intervals: 4000 };
    let quarter_u = quadrature::integrate(|psi| density(ellipse, caustic, psi), 0.0, FRAC_PI_2, tol)?;
    let angle = quadrature::integrate(
        |psi| {
            let h = ellipse.support(psi);
            asin(j * h) * density(ellipse, caustic, psi)
        },
        0.0,
        FRAC_PI_2,
        tol,
    )?;
    Ok(angle.value / (PI * quarter_u.value))
}

/// Smallest and largest rotation numbers reachable inside the `λ` guard.
pub fn rho_range(ellipse: &Ellipse) -> (f64, f64) {
    let eps = ellipse.lambda_guard();
    let lo = crate::conics::caustic_from_lambda(ellipse, eps).expect("guard is valid");
    let hi = CausticParam::from_momenta_product(ellipse, eps).expect("guard is valid");
    (rotation_number(ellipse, &lo), rotation_number(ellipse, &hi))
}

/// Inverts the strictly increasing map `λ ↦ ρ(λ)`.
///
/// Below `ρ(b²/2)` the search runs over `λ`, above it over `b² − λ`, so
/// that the small end of either variable keeps full relative precision.
/// Stops at `|Δρ| < 1e-13` or when the bracket reaches adjacent floats.
pub fn lambda_from_rho(ellipse: &Ellipse, rho: f64) -> Result<CausticParam> {
    let (rmin, rmax) = rho_range(ellipse);
    if !(rho > 0.0 && rho < 0.5) || rho < rmin || rho > rmax {
        return Err(Error::RhoOutOfRange { rho, min: rmin, max: rmax });
    }
    let b2 = ellipse.b() * ellipse.b();
    let eps = ellipse.lambda_guard();
    let half = 0.5 * b2;
    let mid = CausticParam::from_momenta_product(ellipse, half)?;
    let stop = Stop { value_tol: 1e-13, x_tol: 0.0, max_iter: 400 };
    let eval_lambda = |x: f64| {
        let x = x.clamp(eps, half);
        crate::conics::caustic_from_lambda(ellipse, x).expect("clamped into the guard")
    };
    let eval_momenta = |x: f64| {
        let x = x.clamp(eps, half);
        CausticParam::from_momenta_product(ellipse, x).expect("clamped into the guard")
    };
    if rho <= rotation_number(ellipse, &mid) {
        let root = roots::solve_bracketed(
            |x| rotation_number(ellipse, &eval_lambda(x)) - rho,
            eps,
            half,
            stop,
        )?;
        Ok(eval_lambda(root.x))
    } else {
        let root = roots::solve_bracketed(
            |x| rotation_number(ellipse, &eval_momenta(x)) - rho,
            eps,
            half,
            stop,
        )?;
        Ok(eval_momenta(root.x))
    }
}
