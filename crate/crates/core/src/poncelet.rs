//! Brute-force orbit oracle: iterate the reflection law and measure
//! closure, perimeter, winding and the drift of the conserved quantities.
//!
//! Nothing here uses elliptic integrals, so it can check the closed forms
//! independently.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use libm::{acos, atan2, cos, fabs, round, sin};

use crate::billiard::{
    bounce, entry_state, gen_function, joachimsthal, momenta_product, BounceState, OrientedLine,
    NEAR_TANGENT_DELTA,
};
use crate::conics::{CausticParam, Ellipse, Point};
use crate::error::{Error, Result};
use crate::{reduce_angle, wrap_angle};

/// Largest polygon the oracle looks for.
pub const MAX_VERTICES: usize = 10_000;

/// Number of starting points used by the porism check.
pub const PORISM_STARTS: usize = 16;

const GOLDEN: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    /// `P₀` (entry point of the start line) followed by one point per
    /// reflection.
    pub vertices: Vec<Point>,
    /// Start line followed by the outgoing line of every reflection, with
    /// `φ` reduced to `[0, 2π)`.
    pub lines: Vec<OrientedLine>,
    /// Whole turns of `φ` removed by the reduction; the unreduced normal
    /// angle of line `i` is `lines[i].phi + 2π·laps[i]`.
    pub laps: Vec<i64>,
    /// Boundary state at each vertex; the first is the entry state.
    pub states: Vec<BounceState>,
    /// Σ of Euclidean chord lengths.
    pub perimeter: f64,
    /// Σ of generating-function values over the reflections.
    pub action: f64,
    /// Largest relative deviation of `J` from its value at `P₀`.
    pub drift_j: f64,
    /// Largest relative deviation of `λ = b² − F` from its start value.
    pub drift_lambda: f64,
    /// Largest relative deviation of the momenta product `F`.
    pub drift_momenta: f64,
    pub min_delta: f64,
    /// Some reflection had `δ < NEAR_TANGENT_DELTA`.
    pub near_tangent: bool,
    /// First closure found while tracing, if the trace was asked to look.
    pub closure: Option<Closure>,
}

impl OrbitRecord {
    pub fn steps(&self) -> usize {
        self.lines.len() - 1
    }

    /// Rotation of the normal angle from line 0 to line `i`, in turns.
    pub fn turns_at(&self, i: usize) -> f64 {
        (self.laps[i] - self.laps[0]) as f64 + (self.lines[i].phi - self.lines[0].phi) / TAU
    }

    /// Total rotation of the normal angle, in turns.
    pub fn turns(&self) -> f64 {
        self.turns_at(self.lines.len() - 1)
    }

    /// Normal angle of line `i` without reduction.
    pub fn unreduced_phi(&self, i: usize) -> f64 {
        self.lines[i].phi + TAU * self.laps[i] as f64
    }

    /// Whole turns made so far.
    pub fn winding(&self) -> i64 {
        libm::floor(self.turns()) as i64
    }

    /// Number of reflections over total turns.
    pub fn empirical_rotation(&self) -> f64 {
        self.turns() / self.steps() as f64
    }

    /// Σ chord − Σ S over the record. It equals `P₀·v₀ − P_N·v_N` and
    /// vanishes on closed orbits.
    pub fn boundary_term(&self) -> f64 {
        let n = self.lines.len() - 1;
        let (p0, l0) = (self.vertices[0], self.lines[0]);
        let (pn, ln) = (self.vertices[n], self.lines[n]);
        pn.dot(ln.direction()) - p0.dot(l0.direction())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Closure {
    /// Vertices of the polygon.
    pub n: usize,
    /// Turns around the caustic.
    pub m: i64,
    /// Max of vertex distance and `a·`(normal-angle distance).
    pub residual: f64,
}

fn return_residual(ellipse: &Ellipse, record: &OrbitRecord, i: usize) -> f64 {
    let dv = record.vertices[i].distance(record.vertices[0]);
    let da = ellipse.a() * fabs(wrap_angle(record.lines[i].phi - record.lines[0].phi));
    dv.max(da)
}

fn closure_at(ellipse: &Ellipse, record: &OrbitRecord, i: usize, tol: f64) -> Option<Closure> {
    let residual = return_residual(ellipse, record, i);
    if residual < tol {
        let m = round(record.turns_at(i)) as i64;
        Some(Closure { n: i, m, residual })
    } else {
        None
    }
}

/// Default closure tolerance, `1e-9·a`.
pub fn default_tolerance(ellipse: &Ellipse) -> f64 {
    1e-9 * ellipse.a()
}

/// The line through `boundary_point(ψ₀)` tangent to the caustic and leaving
/// the table inwards.
///
/// Solves `(n·P)² = h_λ(φ)²` for the unit normal `n = (cos φ, sin φ)`. This is
/// a homogeneous quadratic in `n`; its two roots are the two tangents from
/// `P`. Each is oriented so that `p = n·P > 0` (the caustic lies to the
/// left); the one travelling into the table is returned.
pub fn launch_tangent(ellipse: &Ellipse, caustic: &CausticParam, psi0: f64) -> OrientedLine {
    let pt = ellipse.boundary_point(psi0);
    let (ax, bx) = caustic.semi_axes(ellipse);
    let m11 = (pt.x - ax) * (pt.x + ax);
    let m22 = (pt.y - bx) * (pt.y + bx);
    let m12 = pt.x * pt.y;
    // Q(φ) = s + r cos(2φ − θ)
    let s = 0.5 * (m11 + m22);
    let half = 0.5 * (m11 - m22);
    let r = libm::hypot(half, m12);
    let theta = atan2(m12, half);
    let spread = acos((-s / r).clamp(-1.0, 1.0));
    let mut best = OrientedLine::new(0.0, psi0);
    let mut best_score = f64::INFINITY;
    for two_phi in [theta + spread, theta - spread] {
        let mut phi = 0.5 * two_phi;
        let mut p = pt.x * cos(phi) + pt.y * sin(phi);
        if p < 0.0 {
            phi += PI;
            p = -p;
        }
        // inward: δ = φ − ψ₀ must lie in (0, π)
        let delta = reduce_angle(phi - psi0);
        let score = if delta > 0.0 && delta < PI { fabs(delta - 0.5 * PI) } else { f64::INFINITY };
        if score < best_score {
            best_score = score;
            best = OrientedLine::new(p, psi0 + delta);
        }
    }
    best
}

fn rel_dev(x: f64, x0: f64) -> f64 {
    if x0 == 0.0 {
        fabs(x)
    } else {
        fabs(x - x0) / fabs(x0)
    }
}

// The line is carried with φ reduced: an unreduced angle of size ~10⁴
// after many reflections costs ~1e-12 absolute in every cos φ.
fn trace(ellipse: &Ellipse, start: &OrientedLine, n_steps: usize, stop_tol: Option<f64>) -> Result<OrbitRecord> {
    let start_phi = reduce_angle(start.phi);
    let start_lap = libm::floor(start.phi / TAU) as i64;
    let start = &OrientedLine::new(start.p, start_phi);
    let b2 = ellipse.b() * ellipse.b();
    let (p0, s0) = entry_state(ellipse, start)?;
    let j0 = joachimsthal(ellipse, &s0);
    let f0 = momenta_product(ellipse, start);
    let lam0 = b2 - f0;
    let mut rec = OrbitRecord {
        vertices: Vec::with_capacity(n_steps + 1),
        lines: Vec::with_capacity(n_steps + 1),
        laps: Vec::with_capacity(n_steps + 1),
        states: Vec::with_capacity(n_steps + 1),
        perimeter: 0.0,
        action: 0.0,
        drift_j: 0.0,
        drift_lambda: 0.0,
        drift_momenta: 0.0,
        min_delta: s0.delta,
        near_tangent: s0.delta < NEAR_TANGENT_DELTA,
        closure: None,
    };
    rec.vertices.push(p0);
    rec.lines.push(*start);
    rec.laps.push(start_lap);
    rec.states.push(s0);
    let mut line = *start;
    let mut lap = start_lap;
    let mut prev = p0;
    for i in 1..=n_steps {
        let b = bounce(ellipse, &line)?;
        rec.perimeter += b.point.distance(prev);
        rec.action += gen_function(ellipse, line.phi, b.outgoing.phi);
        let fm = momenta_product(ellipse, &b.outgoing);
        rec.drift_j = rec.drift_j.max(rel_dev(joachimsthal(ellipse, &b.state), j0));
        rec.drift_momenta = rec.drift_momenta.max(rel_dev(fm, f0));
        rec.drift_lambda = rec.drift_lambda.max(rel_dev(b2 - fm, lam0));
        rec.min_delta = rec.min_delta.min(b.state.delta);
        rec.near_tangent |= b.state.delta < NEAR_TANGENT_DELTA;
        let reduced = reduce_angle(b.outgoing.phi);
        lap += round((b.outgoing.phi - reduced) / TAU) as i64;
        line = OrientedLine::new(b.outgoing.p, reduced);
        rec.vertices.push(b.point);
        rec.lines.push(line);
        rec.laps.push(lap);
        rec.states.push(b.state);
        prev = b.point;
        if let Some(tol) = stop_tol {
            if let Some(c) = closure_at(ellipse, &rec, i, tol) {
                rec.closure = Some(c);
                break;
            }
        }
    }
    Ok(rec)
}

/// Reflects `start` `n_steps` times.
pub fn run_orbit(ellipse: &Ellipse, start: &OrientedLine, n_steps: usize) -> Result<OrbitRecord> {
    trace(ellipse, start, n_steps, None)
}

/// Like [`run_orbit`] but stops at the first return within `tol`.
pub fn run_until_closed(ellipse: &Ellipse, start: &OrientedLine, max_steps: usize, tol: f64) -> Result<OrbitRecord> {
    trace(ellipse, start, max_steps, Some(tol))
}

/// Smallest `n` at which both the vertex and the line direction return to
/// within `tol` of the start, with the turns made by then.
pub fn detect_closure(ellipse: &Ellipse, record: &OrbitRecord, tol: f64) -> Option<Closure> {
    (1..record.lines.len()).find_map(|i| closure_at(ellipse, record, i, tol))
}

/// Smallest return residual over the record.
pub fn best_return(ellipse: &Ellipse, record: &OrbitRecord) -> f64 {
    (1..record.lines.len()).map(|i| return_residual(ellipse, record, i)).fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalBeta {
    /// Mean over the starts of `ΣS / n`.
    pub beta: f64,
    pub n: usize,
    pub m: i64,
    /// Largest closure residual over the starts.
    pub residual: f64,
    /// `(max − min)/mean` of the per-start values.
    pub spread: f64,
    /// Largest `|Σ chord − ΣS|` over the starts.
    pub perimeter_gap: f64,
}

/// Start angles used by [`empirical_beta`]: golden-ratio spacing on the
/// circle, first one at 0.
pub fn porism_starts() -> [f64; PORISM_STARTS] {
    let mut out = [0.0; PORISM_STARTS];
    for (i, psi) in out.iter_mut().enumerate() {
        let t = i as f64 * GOLDEN;
        *psi = TAU * (t - libm::floor(t));
    }
    out
}

/// `β = (1/n) Σ S` over a traced Poncelet polygon, checked against
/// [`PORISM_STARTS`] starting points.
///
/// Fails with [`Error::NoClosure`] if some start does not close within
/// [`MAX_VERTICES`] reflections, and with [`Error::PorismMismatch`] if
/// starts disagree in `(n, m)` or by more than `1e-9` relative.
pub fn empirical_beta(ellipse: &Ellipse, caustic: &CausticParam) -> Result<EmpiricalBeta> {
    empirical_beta_from(ellipse, caustic, &porism_starts(), MAX_VERTICES, default_tolerance(ellipse))
}

pub fn empirical_beta_from(
    ellipse: &Ellipse,
    caustic: &CausticParam,
    starts: &[f64],
    max_steps: usize,
    tol: f64,
) -> Result<EmpiricalBeta> {
    if starts.is_empty() {
        return Err(Error::InvalidArgument("at least one start is required"));
    }
    let mut values = Vec::with_capacity(starts.len());
    let mut first: Option<(usize, i64)> = None;
    let mut residual: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for &psi0 in starts {
        let start = launch_tangent(ellipse, caustic, psi0);
        let rec = run_until_closed(ellipse, &start, max_steps, tol)?;
        let c = match rec.closure {
            Some(c) => c,
            None => {
                return Err(Error::NoClosure { steps: max_steps, best_residual: best_return(ellipse, &rec) })
            }
        };
        match first {
            None => first = Some((c.n, c.m)),
            Some(nm) if nm != (c.n, c.m) => return Err(Error::PorismMismatch { spread: f64::INFINITY }),
            _ => {}
        }
        residual = residual.max(c.residual);
        gap = gap.max(fabs(rec.perimeter - rec.action));
        values.push(rec.action / c.n as f64);
    }
    let (n, m) = first.expect("starts is nonempty");
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = (hi - lo) / mean;
    if spread > 1e-9 {
        return Err(Error::PorismMismatch { spread });
    }
    Ok(EmpiricalBeta { beta: mean, n, m, residual, spread, perimeter_gap: gap })
}

/// Tangency residual `|p − h_λ(φ)|` of a line against a caustic.
pub fn tangency_residual(ellipse: &Ellipse, caustic: &CausticParam, line: &OrientedLine) -> f64 {
    fabs(line.p - caustic.support(ellipse, line.phi))
}

/// `|x²/a² + y²/b² − 1|` of a point.
pub fn boundary_residual(ellipse: &Ellipse, pt: Point) -> f64 {
    fabs(ellipse.implicit(pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::{approx_eq, caustic_from_lambda};
    use crate::rotation::lambda_from_rho;
    use libm::sqrt;

    fn table() -> Ellipse {
        Ellipse::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn launch_from_vertex_is_symmetric() {
        let e = table();
        let cp = caustic_from_lambda(&e, 0.8).unwrap();
        let l = launch_tangent(&e, &cp, 0.0);
        assert!(tangency_residual(&e, &cp, &l) < 1e-13);
        assert!(sin(l.phi) > 0.0);
        let (p0, _) = entry_state(&e, &l).unwrap();
        assert!(p0.distance(Point::new(2.0, 0.0)) < 1e-12);
    }

    #[test]
    fn launch_reproduces_vertical_tangent() {
        let e = table();
        let lambda = 0.8_f64;
        let theta = libm::atan(2.0 * sqrt(lambda) / sqrt(4.0 - lambda));
        let cp = caustic_from_lambda(&e, lambda).unwrap();
        let l = launch_tangent(&e, &cp, -theta);
        assert!(approx_eq(l.p, sqrt(4.0 - lambda), 1e-14));
        assert!(fabs(wrap_angle(l.phi)) < 1e-14);
    }

    #[test]
    fn square_orbit() {
        let e = table();
        let cp = caustic_from_lambda(&e, 0.8).unwrap();
        let l = launch_tangent(&e, &cp, 0.37);
        let rec = run_orbit(&e, &l, 4).unwrap();
        let c = detect_closure(&e, &rec, default_tolerance(&e)).unwrap();
        assert_eq!((c.n, c.m), (4, 1));
        assert!(approx_eq(rec.perimeter, 4.0 * sqrt(5.0), 1e-13));
        assert!(approx_eq(rec.action, 4.0 * sqrt(5.0), 1e-13));
    }

    #[test]
    fn major_axis_closes_after_two() {
        let e = table();
        let rec = run_orbit(&e, &OrientedLine::new(0.0, 0.5 * PI), 2).unwrap();
        let c = detect_closure(&e, &rec, default_tolerance(&e)).unwrap();
        assert_eq!((c.n, c.m), (2, 1));
        assert!(approx_eq(rec.perimeter, 8.0, 1e-15));
    }

    #[test]
    fn pentagram() {
        let e = table();
        let cp = lambda_from_rho(&e, 0.4).unwrap();
        let rec = run_orbit(&e, &launch_tangent(&e, &cp, 1.1), 5).unwrap();
        let c = detect_closure(&e, &rec, 1e-8).unwrap();
        assert_eq!((c.n, c.m), (5, 2));
    }

    #[test]
    fn empirical_square() {
        let e = table();
        let cp = caustic_from_lambda(&e, 0.8).unwrap();
        let eb = empirical_beta(&e, &cp).unwrap();
        assert_eq!((eb.n, eb.m), (4, 1));
        assert!(approx_eq(eb.beta, sqrt(5.0), 1e-13));
    }

    #[test]
    fn no_start_list_is_rejected() {
        let e = table();
        let cp = caustic_from_lambda(&e, 0.8).unwrap();
        assert!(empirical_beta_from(&e, &cp, &[], 10, 1e-9).is_err());
    }
}
