//! Test-only reference routines that share no code with the crate.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random table with `a ∈ [1, 3]`, `b/a ∈ [0.2, 0.95]`.
pub fn random_axes(r: &mut ChaCha8Rng) -> (f64, f64) {
    let a = r.random_range(1.0..3.0);
    let ratio = r.random_range(0.2..0.95);
    (a, a * ratio)
}

pub fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

/// Double-exponential (tanh-sinh) quadrature on `[lo, hi]`.
///
/// Halves the step until two successive levels agree to `tol` relative.
/// Endpoint singularities of algebraic type are handled by the transform.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let half = 0.5 * (hi - lo);
    let eval = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / (u.cosh() * u.cosh());
        // distance to the nearer endpoint, 1 − tanh|u|, without cancellation
        let gap = half * 2.0 / (1.0 + (2.0 * u.abs()).exp());
        let point = if u < 0.0 { lo + gap } else { hi - gap };
        if !(point > lo && point < hi) {
            return 0.0;
        }
        let v = f(point) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * half;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * half;
        if (cur - prev).abs() <= tol * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Legendre `F(φ, k)` by direct quadrature of `1/√(1 − k² sin²θ)`.
pub fn f_quad(phi: f64, k: f64) -> f64 {
    tanh_sinh(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-15)
}

pub fn e_quad(phi: f64, k: f64) -> f64 {
    tanh_sinh(|t| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-15)
}

/// Complete `Π(n, k) = ∫₀^{π/2} dθ / ((1 − n sin²θ)√(1 − k² sin²θ))`.
pub fn pi_quad(n: f64, k: f64) -> f64 {
    tanh_sinh(
        |t| {
            let s2 = t.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - k * k * s2).sqrt())
        },
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

/// `K(k) = π / (2 AGM(1, k'))`.
pub fn k_agm(k: f64) -> f64 {
    let (mut x, mut y) = (1.0_f64, (1.0 - k * k).sqrt());
    for _ in 0..60 {
        let (nx, ny) = (0.5 * (x + y), (x * y).sqrt());
        if (nx - ny).abs() <= 1e-17 * nx {
            x = nx;
            break;
        }
        x = nx;
        y = ny;
    }
    PI / (2.0 * x)
}

/// `E(k)` by the AGM with the Gauss sum `E = K(1 − Σ 2^{j−1} c_j²)`.
pub fn e_agm(k: f64) -> f64 {
    let (mut x, mut y) = (1.0_f64, (1.0 - k * k).sqrt());
    let mut sum = 0.5 * k * k;
    let mut pow = 0.5;
    for _ in 0..60 {
        let c = 0.5 * (x - y);
        let (nx, ny) = (0.5 * (x + y), (x * y).sqrt());
        pow *= 2.0;
        sum += pow * c * c;
        x = nx;
        y = ny;
        if c.abs() <= 1e-17 * x {
            break;
        }
    }
    PI / (2.0 * x) * (1.0 - sum)
}

/// Perimeter of an ellipse by quadrature of the arc-length element.
pub fn perimeter_quad(a: f64, b: f64) -> f64 {
    4.0 * tanh_sinh(|t| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15)
}
