//! Closed-form dynamics of the billiard inside an ellipse.
//!
//! For a table `x²/a² + y²/b² = 1` every billiard trajectory that avoids the
//! focal segment stays tangent to a confocal ellipse
//! `x²/(a²−λ) + y²/(b²−λ) = 1`. This crate evaluates, in closed form through
//! Legendre elliptic integrals, the quantities attached to such a caustic:
//!
//! * the rotation number ρ and the invariant (Gelfand–Leray) measure
//!   ([`rotation`]),
//! * the Mather β-function, i.e. perimeter per vertex of the Poncelet
//!   polygons, and the Lazutkin parameter ([`beta`]),
//! * the conserved quantities of the billiard map on oriented lines and its
//!   non-standard generating function ([`billiard`]),
//! * recovery of an ellipse from a few β-values ([`rigidity`]).
//!
//! Every closed form is paired with a brute-force route: [`poncelet`]
//! iterates the reflection law directly and measures closure, perimeter and
//! winding, and [`quadrature`] integrates the defining integrals.
//!
//! The crate is `no_std` and only needs `alloc` for orbit records and the
//! quadrature work list.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod beta;
pub mod billiard;
pub mod conics;
pub mod elliptic;
mod error;
pub mod poncelet;
pub mod quadrature;
pub mod rigidity;
pub mod roots;
pub mod rotation;

pub use crate::beta::{beta_closed, beta_geometric, beta_of_rho, BetaEvaluation};
pub use crate::billiard::{BounceState, OrientedLine};
pub use crate::conics::{caustic_from_lambda, CausticParam, Ellipse, Point};
pub use crate::error::{Error, Result};
pub use crate::rotation::{lambda_from_rho, rotation_number};

use core::f64::consts::{PI, TAU};

/// Reduces an angle to `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta - TAU * libm::floor(theta / TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle to `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let r = reduce_angle(theta);
    if r > PI {
        r - TAU
    } else {
        r
    }
}
