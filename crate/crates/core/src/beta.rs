//! Mather β-function of the elliptic billiard and the Lazutkin parameter.
//!
//! β(ρ) is taken with the positive sign: the perimeter of a Poncelet
//! polygon of rotation number `ρ = m/n` divided by `n`. (The classical
//! Mather β is the negative of this.) It extends continuously to
//! irrational `ρ`.
//!
//! Three algebraically equivalent evaluations are provided:
//!
//! * [`beta_closed`]: complete and incomplete integrals of the first and
//!   second kind in the eccentricities `e`, `f`;
//! * [`beta_geometric`]: `L + ρ|E_λ|`, tangent-length form;
//! * [`beta_third_kind`]: the intermediate complete third-kind form.

use core::f64::consts::FRAC_PI_2;

use libm::sqrt;

use crate::conics::{caustic_perimeter, CausticParam, Ellipse};
use crate::elliptic;
use crate::error::{Error, Result};
use crate::rotation::{lambda_from_rho, rotation_number, total_measure};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaEvaluation {
    pub rho: f64,
    pub lambda: f64,
    pub beta: f64,
    pub lazutkin: f64,
    pub caustic_perimeter: f64,
    /// Amplitude `φ = arcsin(√λ/b)`.
    pub phi: f64,
    /// Modulus `k = 1/f`.
    pub k: f64,
    pub f: f64,
    /// Joachimsthal value `J = √λ/(ab)`.
    pub joachimsthal: f64,
    /// Total invariant measure `U`; infinite at `ρ = 1/2`.
    pub total_measure: f64,
}

/// `β = 2ce√(e² − f²)/√(e² − 1) − (2cf/K(k)) [K(k)E(φ,k) − E(k)F(φ,k)]`.
pub fn beta_closed(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    let c = ellipse.c();
    let e = ellipse.e();
    let f = caustic.f();
    // e² − f² = λ/c² and e² − 1 = b²/c², taken exactly rather than by
    // subtraction
    let e2_f2 = caustic.lambda() / (c * c);
    let e2_1 = (ellipse.b() / c) * (ellipse.b() / c);
    let (s, co) = caustic.amplitude_sc(ellipse);
    let kc2 = caustic.kc2();
    let kk = elliptic::complete_first_kc(kc2);
    let ek = elliptic::complete_second_kc(kc2);
    let f_phi = elliptic::first_kind_sc(s, co, kc2);
    let e_phi = elliptic::second_kind_sc(s, co, kc2);
    2.0 * c * e * sqrt(e2_f2) / sqrt(e2_1) - 2.0 * c * f / kk * (kk * e_phi - ek * f_phi)
}

/// Lazutkin parameter `L(E_λ) = 2a√λ/b − 2√(a² − λ) E(φ, k)`.
pub fn lazutkin_param(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    let (a, b) = (ellipse.a(), ellipse.b());
    let (major, _) = caustic.semi_axes(ellipse);
    let (s, co) = caustic.amplitude_sc(ellipse);
    2.0 * a * sqrt(caustic.lambda()) / b - 2.0 * major * elliptic::second_kind_sc(s, co, caustic.kc2())
}

/// `β = 2a√λ/b − 2√(a² − λ) E(φ, k) + ρ |E_λ|`.
pub fn beta_geometric(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    lazutkin_param(ellipse, caustic)
        + rotation_number(ellipse, caustic) * caustic_perimeter(ellipse, caustic)
}

/// `β = (4e²g/U) [ (k²/α²) K(k) − (k²/α² − 1) Π(α², k) ]` with
/// `α² = 1/(1+d)`, `g = 2/√(e²(1+d))`.
pub fn beta_third_kind(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    let e = ellipse.e();
    let d = caustic.d();
    let alpha2 = 1.0 / (1.0 + d);
    let k2 = caustic.k() * caustic.k();
    let g = 2.0 / (e * sqrt(1.0 + d));
    let u = total_measure(ellipse, caustic).total_u;
    let kc2 = caustic.kc2();
    let kk = elliptic::complete_first_kc(kc2);
    let pi = elliptic::complete_third_kc(alpha2, kc2);
    let ratio = k2 / alpha2;
    4.0 * e * e * g / u * (ratio * kk - (ratio - 1.0) * pi)
}

fn evaluation(ellipse: &Ellipse, caustic: &CausticParam, rho: f64) -> BetaEvaluation {
    BetaEvaluation {
        rho,
        lambda: caustic.lambda(),
        beta: beta_closed(ellipse, caustic),
        lazutkin: lazutkin_param(ellipse, caustic),
        caustic_perimeter: caustic_perimeter(ellipse, caustic),
        phi: caustic.amplitude(),
        k: caustic.k(),
        f: caustic.f(),
        joachimsthal: caustic.joachimsthal(),
        total_measure: total_measure(ellipse, caustic).total_u,
    }
}

/// Full evaluation for a caustic given by `λ`.
pub fn beta_of_caustic(ellipse: &Ellipse, caustic: &CausticParam) -> BetaEvaluation {
    evaluation(ellipse, caustic, rotation_number(ellipse, caustic))
}

/// The limit `ρ → 1/2`: the caustic collapses onto the focal segment and
/// the Poncelet polygon is the major axis traversed twice.
pub fn beta_half(ellipse: &Ellipse) -> BetaEvaluation {
    let (a, b) = (ellipse.a(), ellipse.b());
    let c = ellipse.c();
    BetaEvaluation {
        rho: 0.5,
        lambda: b * b,
        beta: 2.0 * a,
        lazutkin: 2.0 * a - 2.0 * c,
        caustic_perimeter: 4.0 * c,
        phi: FRAC_PI_2,
        k: 1.0,
        f: 1.0,
        joachimsthal: 1.0 / a,
        total_measure: f64::INFINITY,
    }
}

/// β and the associated quantities at rotation number `rho ∈ (0, 1/2]`.
///
/// `ρ = 1/2` returns the exact limit `β = 2a`. Rotation numbers so close
/// to 0 or 1/2 that the caustic falls inside the `λ` guard are rejected.
pub fn beta_of_rho(ellipse: &Ellipse, rho: f64) -> Result<BetaEvaluation> {
    if rho == 0.5 {
        return Ok(beta_half(ellipse));
    }
    if !(rho > 0.0 && rho < 0.5) {
        let (min, max) = crate::rotation::rho_range(ellipse);
        return Err(Error::RhoOutOfRange { rho, min, max });
    }
    let caustic = lambda_from_rho(ellipse, rho)?;
    Ok(evaluation(ellipse, &caustic, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::{approx_eq, caustic_from_lambda};

    fn table() -> Ellipse {
        Ellipse::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn four_gon_value() {
        let e = table();
        let cp = caustic_from_lambda(&e, 0.8).unwrap();
        let root5 = sqrt(5.0);
        assert!(approx_eq(beta_closed(&e, &cp), root5, 1e-15));
        assert!(approx_eq(beta_geometric(&e, &cp), root5, 1e-15));
        assert!(approx_eq(beta_third_kind(&e, &cp), root5, 1e-14));
        assert!(approx_eq(lazutkin_param(&e, &cp), 0.317_874_554_608_279_9, 1e-14));
        let ev = beta_of_rho(&e, 0.25).unwrap();
        assert!(approx_eq(ev.beta, root5, 1e-14));
        assert!(approx_eq(ev.lambda, 0.8, 1e-13));
    }

    #[test]
    fn frozen_rational_values() {
        // arbitrary-precision references for the (2, 1) table
        let e = table();
        for (rho, beta) in [
            (1.0 / 3.0, 2.843_613_881_883_001_8),
            (1.0 / 5.0, 1.837_731_440_989_088_1),
            (2.0 / 5.0, 3.307_174_390_691_664_7),
            (2.0 / 7.0, 2.503_389_721_111_278_8),
            (3.0 / 7.0, 3.505_128_321_228_167_7),
        ] {
            let ev = beta_of_rho(&e, rho).unwrap();
            assert!(approx_eq(ev.beta, beta, 1e-12), "rho = {rho}: {}", ev.beta);
        }
    }

    #[test]
    fn limits() {
        let e = table();
        let small = caustic_from_lambda(&e, 1e-12).unwrap();
        assert!(beta_closed(&e, &small) < 1e-5);
        let big = CausticParam::from_momenta_product(&e, 1e-12).unwrap();
        // ρ is still only about 0.458 here: the approach to 1/2 is logarithmic
        let top = beta_closed(&e, &big);
        assert!(top > beta_of_rho(&e, 3.0 / 7.0).unwrap().beta && top < 4.0);
        let half = beta_of_rho(&e, 0.5).unwrap();
        assert_eq!(half.beta, 4.0);
        assert!(approx_eq(half.lazutkin + 0.5 * half.caustic_perimeter, half.beta, 1e-15));
        assert!(beta_of_rho(&e, 0.0).is_err());
        assert!(beta_of_rho(&e, 0.51).is_err());
    }
}
