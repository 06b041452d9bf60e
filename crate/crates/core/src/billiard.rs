//! The billiard map on oriented lines and its conserved quantities.
//!
//! An oriented line is `cos φ·x + sin φ·y = p`, with `φ` the direction of
//! its right normal; it travels along `v = (−sin φ, cos φ)`. At a
//! reflection with outer normal `ψ` the incoming and outgoing normals are
//! `φ₁ = ψ − δ` and `φ₂ = ψ + δ`, `δ ∈ (0, π)` being the reflection angle.
//! Angles are never reduced here: `φ` grows by `2δ` per bounce so the total
//! rotation of an orbit can be read off directly.

use libm::{cos, fabs, sin, sqrt};

use crate::conics::{Ellipse, Point};
use crate::error::{Error, Result};
use crate::reduce_angle;

/// Tangency threshold on the squared half-chord, relative to `a²`.
const TANGENCY_TOL: f64 = 1e-14;

/// Reflection angles below this are flagged as near-grazing.
pub const NEAR_TANGENT_DELTA: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedLine {
    /// Signed distance from the origin.
    pub p: f64,
    /// Direction of the right normal (radians, unreduced).
    pub phi: f64,
}

impl OrientedLine {
    pub const fn new(p: f64, phi: f64) -> Self {
        OrientedLine { p, phi }
    }

    pub fn normal(&self) -> Point {
        Point::new(cos(self.phi), sin(self.phi))
    }

    pub fn direction(&self) -> Point {
        Point::new(-sin(self.phi), cos(self.phi))
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> Point {
        let n = self.normal();
        Point::new(self.p * n.x, self.p * n.y)
    }

    /// The same line traversed the other way.
    pub fn reversed(&self) -> OrientedLine {
        OrientedLine::new(-self.p, self.phi + core::f64::consts::PI)
    }

    /// Whether the line crosses the interior of the table.
    pub fn crosses(&self, ellipse: &Ellipse) -> bool {
        fabs(self.p) < ellipse.support(self.phi)
    }
}

/// Boundary coordinates of a reflection: outer normal `ψ` and reflection
/// angle `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BounceState {
    pub psi: f64,
    pub delta: f64,
}

impl BounceState {
    /// State at the vertex shared by two consecutive lines.
    pub fn between(phi1: f64, phi2: f64) -> Self {
        BounceState { psi: 0.5 * (phi1 + phi2), delta: 0.5 * (phi2 - phi1) }
    }
}

/// One reflection: where it happens, the boundary state, and the outgoing
/// line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounce {
    pub point: Point,
    pub state: BounceState,
    pub outgoing: OrientedLine,
}

/// The two boundary crossings of a line, `(backward, forward)` along its
/// direction.
pub fn chord_endpoints(ellipse: &Ellipse, line: &OrientedLine) -> Result<(Point, Point)> {
    let (a, b) = (ellipse.a(), ellipse.b());
    let n = line.normal();
    let v = line.direction();
    let x0 = Point::new(line.p * n.x, line.p * n.y);
    let (a2, b2) = (a * a, b * b);
    // Q(x0 + t v) = qa t² + 2 qb t + qc
    let qa = v.x * v.x / a2 + v.y * v.y / b2;
    let qb = x0.x * v.x / a2 + x0.y * v.y / b2;
    let qc = ellipse.implicit(x0);
    let disc = qb * qb - qa * qc;
    if !(disc / (qa * qa) > TANGENCY_TOL * a2) {
        return Err(Error::LineMissesTable { p: line.p, support: ellipse.support(line.phi) });
    }
    let root = sqrt(disc);
    let q = -(qb + if qb >= 0.0 { root } else { -root });
    let (t1, t2) = (q / qa, qc / q);
    let (tb, tf) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
    Ok((
        Point::new(x0.x + tb * v.x, x0.y + tb * v.y),
        Point::new(x0.x + tf * v.x, x0.y + tf * v.y),
    ))
}

/// Outer normal `ψ` of a boundary point and reflection angle `δ ∈ (0, π)` of
/// a line leaving or arriving there, with `ψ` unwrapped to sit next to the
/// line's `φ`.
fn reflection_geometry(ellipse: &Ellipse, point: Point, phi_in: f64) -> BounceState {
    let psi = ellipse.normal_angle(point);
    let delta = reduce_angle(psi - phi_in);
    BounceState { psi: phi_in + delta, delta }
}

/// Reflects `line` at its forward intersection with the table.
pub fn bounce(ellipse: &Ellipse, line: &OrientedLine) -> Result<Bounce> {
    let (_, hit) = chord_endpoints(ellipse, line)?;
    let state = reflection_geometry(ellipse, hit, line.phi);
    let phi2 = line.phi + 2.0 * state.delta;
    let p2 = hit.x * cos(phi2) + hit.y * sin(phi2);
    Ok(Bounce { point: hit, state, outgoing: OrientedLine::new(p2, phi2) })
}

/// The billiard map `T: (p₁, φ₁) ↦ (p₂, φ₂)`.
///
/// Computed geometrically: forward intersection with the conic, then the
/// direction mirrored about the tangent.
pub fn reflect(ellipse: &Ellipse, line: &OrientedLine) -> Result<OrientedLine> {
    bounce(ellipse, line).map(|b| b.outgoing)
}

/// State at the point where `line` enters the table, `δ = φ − ψ`.
pub fn entry_state(ellipse: &Ellipse, line: &OrientedLine) -> Result<(Point, BounceState)> {
    let (back, _) = chord_endpoints(ellipse, line)?;
    let psi = ellipse.normal_angle(back);
    let delta = reduce_angle(line.phi - psi);
    Ok((back, BounceState { psi: line.phi - delta, delta }))
}

/// Non-standard generating function
/// `S(φ₁, φ₂) = 2 h((φ₁+φ₂)/2) sin((φ₂−φ₁)/2)`.
///
/// For a vertex `P` shared by consecutive lines, `S` is the length of the
/// broken path from the foot of the perpendicular on the first line, to
/// `P`, to the foot on the second line. Summed around a closed orbit the
/// foot terms cancel and `ΣS` is the perimeter.
pub fn gen_function(ellipse: &Ellipse, phi1: f64, phi2: f64) -> f64 {
    let st = BounceState::between(phi1, phi2);
    2.0 * ellipse.support(st.psi) * sin(st.delta)
}

/// `(−∂S/∂φ₁, ∂S/∂φ₂)`, which equal `(p₁, p₂)` for consecutive lines.
pub fn gen_function_grads(ellipse: &Ellipse, phi1: f64, phi2: f64) -> (f64, f64) {
    let st = BounceState::between(phi1, phi2);
    let h = ellipse.support(st.psi);
    let dh = ellipse.support_deriv(st.psi);
    let (s, c) = (sin(st.delta), cos(st.delta));
    (h * c - dh * s, h * c + dh * s)
}

/// Joachimsthal integral `J = sin δ / h(ψ)`.
pub fn joachimsthal(ellipse: &Ellipse, state: &BounceState) -> f64 {
    sin(state.delta) / ellipse.support(state.psi)
}

/// Product of the focal distances of a line, `F = d₁d₂ = p² − c² cos² φ`.
pub fn momenta_product(ellipse: &Ellipse, line: &OrientedLine) -> f64 {
    let c = ellipse.c();
    let cc = c * cos(line.phi);
    (line.p - cc) * (line.p + cc)
}

/// Jacobi–Chasles parameter `λ = b² − F` of the confocal ellipse tangent
/// to the line.
pub fn lambda_of_line(ellipse: &Ellipse, line: &OrientedLine) -> Result<f64> {
    let b2 = ellipse.b() * ellipse.b();
    let lambda = b2 - momenta_product(ellipse, line);
    if !(lambda > 0.0 && lambda < b2) {
        return Err(Error::NotElliptic { lambda, b2 });
    }
    Ok(lambda)
}
