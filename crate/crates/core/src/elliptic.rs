//! Legendre elliptic integrals of the first, second and third kind.
//!
//! All three kinds reduce to Carlson's symmetric integrals `R_F`, `R_D`,
//! `R_J` (and the degenerate `R_C`), evaluated by the duplication theorem
//! followed by a fifth-order Taylor correction (Carlson 1995). The
//! truncation bound is [`CARLSON_TOL`].
//!
//! Conventions: `k` is the modulus (not the parameter `m = k²`) and the
//! amplitude `φ` is restricted to `[0, π/2]`.
//!
//! Besides the checked public functions there is a crate-internal interface
//! that takes `sin φ`, `cos φ` and the complementary parameter `k'² = 1 − k²`
//! directly. Callers that know those quantities exactly (the caustic near
//! the focal segment has `k'² ≪ 1`) avoid the cancellation in `1 − k²`.

use core::f64::consts::FRAC_PI_2;

use libm::{cos, fabs, sin, sqrt};

use crate::error::{Error, Result};

/// Relative truncation bound of the Carlson series.
pub const CARLSON_TOL: f64 = 1e-16;

const MAX_DUPLICATIONS: usize = 64;

/// Carlson's symmetric integral of the first kind,
/// `R_F(x,y,z) = ½ ∫₀^∞ dt / √((t+x)(t+y)(t+z))`.
///
/// Requires `x, y, z ≥ 0` with at most one of them zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let a0 = (x + y + z) / 3.0;
    let q = libm::pow(3.0 * CARLSON_TOL, -1.0 / 6.0)
        * fabs(a0 - x).max(fabs(a0 - y)).max(fabs(a0 - z));
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut pow4 = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * pow4 < fabs(am) {
            break;
        }
        let (sx, sy, sz) = (sqrt(xm), sqrt(ym), sqrt(zm));
        let lam = sx * sy + sx * sz + sy * sz;
        xm = 0.25 * (xm + lam);
        ym = 0.25 * (ym + lam);
        zm = 0.25 * (zm + lam);
        am = 0.25 * (am + lam);
        pow4 *= 0.25;
    }
    let dx = (a0 - x) * pow4 / am;
    let dy = (a0 - y) * pow4 / am;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / sqrt(am)
}

/// Carlson's symmetric integral of the second kind,
/// `R_D(x,y,z) = R_J(x,y,z,z)`.
///
/// Requires `x, y ≥ 0`, at most one of them zero, and `z > 0`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = libm::pow(0.25 * CARLSON_TOL, -1.0 / 6.0)
        * fabs(a0 - x).max(fabs(a0 - y)).max(fabs(a0 - z));
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut pow4 = 1.0;
    let mut sum = 0.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * pow4 < fabs(am) {
            break;
        }
        let (sx, sy, sz) = (sqrt(xm), sqrt(ym), sqrt(zm));
        let lam = sx * sy + sx * sz + sy * sz;
        sum += pow4 / (sz * (zm + lam));
        xm = 0.25 * (xm + lam);
        ym = 0.25 * (ym + lam);
        zm = 0.25 * (zm + lam);
        am = 0.25 * (am + lam);
        pow4 *= 0.25;
    }
    let dx = (a0 - x) * pow4 / am;
    let dy = (a0 - y) * pow4 / am;
    let dz = -(dx + dy) / 3.0;
    let xy = dx * dy;
    let zz = dz * dz;
    let e2 = xy - 6.0 * zz;
    let e3 = (3.0 * xy - 8.0 * zz) * dz;
    let e4 = 3.0 * (xy - zz) * zz;
    let e5 = xy * zz * dz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    pow4 * series / (am * sqrt(am)) + 3.0 * sum
}

/// Degenerate case `R_C(x,y) = R_F(x,y,y)`, for `x ≥ 0`, `y > 0`.
pub fn carlson_rc(x: f64, y: f64) -> f64 {
    let a0 = (x + 2.0 * y) / 3.0;
    let q = libm::pow(3.0 * CARLSON_TOL, -1.0 / 8.0) * fabs(a0 - x);
    let (mut xm, mut ym, mut am) = (x, y, a0);
    let mut pow4 = 1.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * pow4 < fabs(am) {
            break;
        }
        let lam = 2.0 * sqrt(xm) * sqrt(ym) + ym;
        xm = 0.25 * (xm + lam);
        ym = 0.25 * (ym + lam);
        am = 0.25 * (am + lam);
        pow4 *= 0.25;
    }
    let s = (y - a0) * pow4 / am;
    let s2 = s * s;
    let series = 1.0
        + s2 * (3.0 / 10.0
            + s * (1.0 / 7.0
                + s * (3.0 / 8.0 + s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * (9.0 / 8.0))))));
    series / sqrt(am)
}

/// Carlson's symmetric integral of the third kind,
/// `R_J(x,y,z,p) = (3/2) ∫₀^∞ dt / ((t+p) √((t+x)(t+y)(t+z)))`.
///
/// Requires `x, y, z ≥ 0`, at most one zero, and `p > 0`.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = libm::pow(0.25 * CARLSON_TOL, -1.0 / 6.0)
        * fabs(a0 - x)
            .max(fabs(a0 - y))
            .max(fabs(a0 - z))
            .max(fabs(a0 - p));
    let (mut xm, mut ym, mut zm, mut pm, mut am) = (x, y, z, p, a0);
    let mut pow4 = 1.0;
    let mut sum = 0.0;
    for _ in 0..MAX_DUPLICATIONS {
        if q * pow4 < fabs(am) {
            break;
        }
        let (sx, sy, sz, sp) = (sqrt(xm), sqrt(ym), sqrt(zm), sqrt(pm));
        let lam = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = pow4 * pow4 * pow4 * delta / (d * d);
        sum += pow4 / d * carlson_rc(1.0, 1.0 + e);
        xm = 0.25 * (xm + lam);
        ym = 0.25 * (ym + lam);
        zm = 0.25 * (zm + lam);
        pm = 0.25 * (pm + lam);
        am = 0.25 * (am + lam);
        pow4 *= 0.25;
    }
    let dx = (a0 - x) * pow4 / am;
    let dy = (a0 - y) * pow4 / am;
    let dz = (a0 - z) * pow4 / am;
    let dp = -(dx + dy + dz) / 2.0;
    let xyz = dx * dy * dz;
    let pp = dp * dp;
    let e2 = dx * dy + dx * dz + dy * dz - 3.0 * pp;
    let e3 = xyz + 2.0 * e2 * dp + 4.0 * pp * dp;
    let e4 = (2.0 * xyz + e2 * dp + 3.0 * pp * dp) * dp;
    let e5 = xyz * pp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    pow4 * series / (am * sqrt(am)) + 6.0 * sum
}

// Amplitude-form kernels. `s = sin φ`, `c = cos φ` with φ ∈ [0, π/2], and
// `kc2 = 1 − k²`. No validation.

pub(crate) fn first_kind_sc(s: f64, c: f64, kc2: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let cc = c * c;
    s * carlson_rf(cc, cc + kc2 * s * s, 1.0)
}

pub(crate) fn second_kind_sc(s: f64, c: f64, kc2: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if kc2 == 0.0 {
        // k = 1: E(φ, 1) = sin φ
        return s;
    }
    let k2 = 1.0 - kc2;
    let cc = c * c;
    let y = cc + kc2 * s * s;
    s * (carlson_rf(cc, y, 1.0) - k2 * s * s * carlson_rd(cc, y, 1.0) / 3.0)
}

pub(crate) fn complete_first_kc(kc2: f64) -> f64 {
    carlson_rf(0.0, kc2, 1.0)
}

pub(crate) fn complete_second_kc(kc2: f64) -> f64 {
    if kc2 == 0.0 {
        return 1.0;
    }
    let k2 = 1.0 - kc2;
    carlson_rf(0.0, kc2, 1.0) - k2 * carlson_rd(0.0, kc2, 1.0) / 3.0
}

pub(crate) fn complete_third_kc(n: f64, kc2: f64) -> f64 {
    carlson_rf(0.0, kc2, 1.0) + n * carlson_rj(0.0, kc2, 1.0, 1.0 - n) / 3.0
}

fn check_amplitude(phi: f64) -> Result<()> {
    // A few ulps of slack so that `asin(1.0)`-style inputs pass.
    if !(phi >= 0.0 && phi <= FRAC_PI_2 * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::EllipticDomain("amplitude phi must lie in [0, pi/2]"));
    }
    Ok(())
}

/// `F(φ, k) = ∫₀^φ dt / √(1 − k² sin² t)` for `0 ≤ φ ≤ π/2`, `k ≥ 0`,
/// `k sin φ < 1`.
pub fn ellint_f(phi: f64, k: f64) -> Result<f64> {
    check_amplitude(phi)?;
    if !(k >= 0.0) {
        return Err(Error::EllipticDomain("modulus k must be non-negative"));
    }
    let phi = phi.min(FRAC_PI_2);
    let (s, c) = (sin(phi), cos(phi));
    if k * s >= 1.0 {
        return Err(Error::EllipticDomain(
            "k sin(phi) >= 1: first-kind integral diverges",
        ));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(s * carlson_rf(c * c, (1.0 - k * s) * (1.0 + k * s), 1.0))
}

/// `E(φ, k) = ∫₀^φ √(1 − k² sin² t) dt` for `0 ≤ φ ≤ π/2`, `0 ≤ k ≤ 1`.
pub fn ellint_e(phi: f64, k: f64) -> Result<f64> {
    check_amplitude(phi)?;
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::EllipticDomain("modulus k must lie in [0, 1]"));
    }
    let phi = phi.min(FRAC_PI_2);
    Ok(second_kind_sc(sin(phi), cos(phi), (1.0 - k) * (1.0 + k)))
}

/// Complete integral of the first kind `K(k)`, `0 ≤ k < 1`.
pub fn ellint_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::EllipticDomain("K(k) requires 0 <= k < 1"));
    }
    Ok(complete_first_kc((1.0 - k) * (1.0 + k)))
}

/// Complete integral of the second kind `E(k)`, `0 ≤ k ≤ 1`.
pub fn ellint_ecomp(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::EllipticDomain("E(k) requires 0 <= k <= 1"));
    }
    Ok(complete_second_kc((1.0 - k) * (1.0 + k)))
}

/// Complete integral of the third kind
/// `Π(α², k) = ∫₀^{π/2} dt / ((1 − α² sin² t) √(1 − k² sin² t))`.
///
/// Only the circular case `α² < 1` is supported.
pub fn ellint_pi(alpha2: f64, k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::EllipticDomain("Pi(alpha^2, k) requires 0 <= k < 1"));
    }
    if !(alpha2 < 1.0) {
        return Err(Error::EllipticDomain(
            "Pi(alpha^2, k) requires alpha^2 < 1 (hyperbolic case unsupported)",
        ));
    }
    Ok(complete_third_kc(alpha2, (1.0 - k) * (1.0 + k)))
}

/// `K(k)` through the arithmetic–geometric mean, `K = π / (2 AGM(1, k'))`.
///
/// Kept as a second route for `K`; the Carlson path is the primary one.
pub fn ellint_k_agm(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::EllipticDomain("K(k) requires 0 <= k < 1"));
    }
    let mut a = 1.0;
    let mut g = sqrt((1.0 - k) * (1.0 + k));
    for _ in 0..64 {
        if fabs(a - g) <= 2.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + g);
        g = sqrt(a * g);
        a = next;
    }
    Ok(FRAC_PI_2 / a)
}
