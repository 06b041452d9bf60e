//! The billiard table, its support function, and the confocal family.
//!
//! Eccentricities follow the convention `e = a/c > 1` for the table and
//! `f = √(a² − λ)/c > 1` for the caustic `E_λ`, where `c = √(a² − b²)`.
//! The elliptic modulus of the caustic is `k = 1/f`.

use libm::{atan2, cos, sin, sqrt};

use crate::elliptic;
use crate::error::{Error, Result};

/// Relative width of the excluded neighbourhoods of `λ = 0` and `λ = b²`.
pub const LAMBDA_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Ellipse `x²/a² + y²/b² = 1` centred at the origin, `a > b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    a: f64,
    b: f64,
}

impl Ellipse {
    /// Circles are rejected: every eccentricity-based formula is singular at
    /// `c = 0`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0 && a > b && a.is_finite()) {
            return Err(Error::InvalidEllipse { a, b });
        }
        Ok(Ellipse { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Focal half-distance `c = √(a² − b²)`.
    pub fn c(&self) -> f64 {
        sqrt((self.a - self.b) * (self.a + self.b))
    }

    /// Eccentricity in the `e = a/c > 1` convention.
    pub fn e(&self) -> f64 {
        self.a / self.c()
    }

    /// Support function `h(ψ) = √(a² cos²ψ + b² sin²ψ)`.
    pub fn support(&self, psi: f64) -> f64 {
        let (s, c) = (sin(psi), cos(psi));
        libm::hypot(self.a * c, self.b * s)
    }

    /// `h′(ψ) = (b² − a²) sin ψ cos ψ / h(ψ)`.
    pub fn support_deriv(&self, psi: f64) -> f64 {
        let (s, c) = (sin(psi), cos(psi));
        (self.b - self.a) * (self.b + self.a) * s * c / self.support(psi)
    }

    /// Point of the boundary whose outer normal has direction `psi`:
    /// `γ(ψ) = h(ψ)(cos ψ, sin ψ) + h′(ψ)(−sin ψ, cos ψ)`.
    pub fn boundary_point(&self, psi: f64) -> Point {
        let (s, c) = (sin(psi), cos(psi));
        let h = self.support(psi);
        let dh = self.support_deriv(psi);
        Point::new(h * c - dh * s, h * s + dh * c)
    }

    /// Direction of the outer normal at a boundary point, in `(−π, π]`.
    pub fn normal_angle(&self, p: Point) -> f64 {
        atan2(p.y / (self.b * self.b), p.x / (self.a * self.a))
    }

    /// `x²/a² + y²/b² − 1`.
    pub fn implicit(&self, p: Point) -> f64 {
        let (u, v) = (p.x / self.a, p.y / self.b);
        u * u + v * v - 1.0
    }

    /// Circumference `4a E(c/a)`.
    pub fn perimeter(&self) -> f64 {
        let r = self.b / self.a;
        4.0 * self.a * elliptic::complete_second_kc(r * r)
    }

    /// The guard `ε = 1e-12·b²` that keeps `λ` away from both endpoints.
    pub fn lambda_guard(&self) -> f64 {
        LAMBDA_GUARD * self.b * self.b
    }
}

/// A confocal elliptic caustic `E_λ` of a given table.
///
/// Alongside `λ` the complement `b² − λ` is stored separately; near the
/// focal segment it is the small quantity that controls `k' = √(1 − k²)`,
/// and recomputing it from `λ` would lose most of its digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticParam {
    lambda: f64,
    complement: f64,
    f: f64,
    k: f64,
    kc2: f64,
    j: f64,
    d: f64,
}

impl CausticParam {
    /// Builds the caustic from `λ` and `b² − λ`, both given.
    fn from_parts(ellipse: &Ellipse, lambda: f64, complement: f64) -> Result<Self> {
        let (a, b) = (ellipse.a, ellipse.b);
        let b2 = b * b;
        let guard = ellipse.lambda_guard();
        if !(lambda >= guard && complement >= guard) {
            return Err(Error::LambdaOutOfRange { lambda, b2 });
        }
        let c = ellipse.c();
        let e = ellipse.e();
        // a² − λ = c² + (b² − λ)
        let major2 = c * c + complement;
        let f = sqrt(major2) / c;
        Ok(CausticParam {
            lambda,
            complement,
            f,
            k: c / sqrt(major2),
            kc2: complement / major2,
            j: sqrt(lambda) / (a * b),
            d: complement * e * e / lambda,
        })
    }

    /// Builds the caustic from `F = b² − λ`, the product of the focal
    /// distances of any tangent line. Use this near `λ = b²`.
    pub fn from_momenta_product(ellipse: &Ellipse, momenta: f64) -> Result<Self> {
        let b2 = ellipse.b * ellipse.b;
        CausticParam::from_parts(ellipse, b2 - momenta, momenta)
            .map_err(|_| Error::LambdaOutOfRange { lambda: b2 - momenta, b2 })
    }

    /// Jacobi–Chasles parameter `λ`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `b² − λ`, equal to the momenta product `d₁d₂` of tangent lines.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// Caustic eccentricity `f = √(a² − λ)/c > 1`.
    pub fn f(&self) -> f64 {
        self.f
    }

    /// Elliptic modulus `k = 1/f`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Complementary parameter `k'² = 1 − k² = (b² − λ)/(a² − λ)`.
    pub fn kc2(&self) -> f64 {
        self.kc2
    }

    /// Joachimsthal value `J = √λ/(ab)`.
    pub fn joachimsthal(&self) -> f64 {
        self.j
    }

    /// Reduction parameter `d = (b² − λ)e²/λ = (f² − 1)e²/(e² − f²)`.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Semi-axes `(√(a² − λ), √(b² − λ))` of the caustic.
    pub fn semi_axes(&self, ellipse: &Ellipse) -> (f64, f64) {
        let c = ellipse.c();
        (sqrt(c * c + self.complement), sqrt(self.complement))
    }

    /// Support function of the caustic, `h_λ(φ)`.
    pub fn support(&self, ellipse: &Ellipse, phi: f64) -> f64 {
        let (ax, bx) = self.semi_axes(ellipse);
        libm::hypot(ax * cos(phi), bx * sin(phi))
    }

    /// `(sin φ, cos φ)` of the amplitude `φ = arcsin(√λ/b)`.
    pub(crate) fn amplitude_sc(&self, ellipse: &Ellipse) -> (f64, f64) {
        let b = ellipse.b;
        (sqrt(self.lambda) / b, sqrt(self.complement) / b)
    }

    /// Amplitude `φ = arcsin(√λ/b) = arcsin √((e² − f²)/(e² − 1))`.
    pub fn amplitude(&self) -> f64 {
        atan2(sqrt(self.lambda), sqrt(self.complement))
    }
}

/// Confocal caustic with parameter `λ ∈ (0, b²)`.
///
/// Both ends are excluded by [`Ellipse::lambda_guard`]; outside that
/// window (including the hyperbolic range `λ > b²`) a domain error is
/// returned.
pub fn caustic_from_lambda(ellipse: &Ellipse, lambda: f64) -> Result<CausticParam> {
    let b2 = ellipse.b * ellipse.b;
    CausticParam::from_parts(ellipse, lambda, b2 - lambda)
}

/// Perimeter `|E_λ| = 4√(a² − λ) E(k)` of the caustic.
pub fn caustic_perimeter(ellipse: &Ellipse, caustic: &CausticParam) -> f64 {
    let (major, _) = caustic.semi_axes(ellipse);
    4.0 * major * elliptic::complete_second_kc(caustic.kc2)
}

/// Reads `λ` back from a Joachimsthal value, `λ = (abJ)²`.
pub fn lambda_from_joachimsthal(ellipse: &Ellipse, j: f64) -> f64 {
    let t = ellipse.a * ellipse.b * j;
    t * t
}

#[cfg(test)]
pub(crate) fn approx_eq(x: f64, y: f64, tol: f64) -> bool {
    libm::fabs(x - y) <= tol * libm::fabs(y).max(1.0)
}
