use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Semi-axes must satisfy `a > b > 0`.
    InvalidEllipse { a: f64, b: f64 },
    /// Caustic parameter outside the elliptic range `(0, b²)`.
    LambdaOutOfRange { lambda: f64, b2: f64 },
    /// Rotation number outside the range the evaluator can resolve.
    RhoOutOfRange { rho: f64, min: f64, max: f64 },
    /// Argument outside the domain of an elliptic integral.
    EllipticDomain(&'static str),
    /// A line that is tangent to the table or misses it.
    LineMissesTable { p: f64, support: f64 },
    /// A line whose caustic is not a confocal ellipse (it crosses the
    /// focal segment, or lies outside the table).
    NotElliptic { lambda: f64, b2: f64 },
    /// Any other bad scalar argument.
    InvalidArgument(&'static str),
    /// Adaptive quadrature ran out of subdivisions.
    Quadrature { achieved: f64, requested: f64 },
    /// Root finding failed to converge inside a valid bracket.
    RootNotConverged { residual: f64 },
    /// The target value lies outside the range attained on the search
    /// interval.
    NoSolution { target: f64, lo: f64, hi: f64 },
    /// No Poncelet closure within the step budget.
    NoClosure { steps: usize, best_residual: f64 },
    /// Poncelet polygons from different starts disagree in perimeter.
    PorismMismatch { spread: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::InvalidEllipse { a, b } => {
                write!(f, "semi-axes must satisfy a > b > 0 (got a = {a}, b = {b})")
            }
            Error::LambdaOutOfRange { lambda, b2 } => write!(
                f,
                "lambda must lie in (0, b^2) = (0, {b2}); got {lambda} (hyperbolic caustics are not supported)"
            ),
            Error::RhoOutOfRange { rho, min, max } => write!(
                f,
                "rho = {rho} outside the resolvable range [{min}, {max}]"
            ),
            Error::EllipticDomain(what) => write!(f, "elliptic integral domain error: {what}"),
            Error::LineMissesTable { p, support } => write!(
                f,
                "line does not cross the table (|p| = {} >= h(phi) = {support})",
                p.abs()
            ),
            Error::NotElliptic { lambda, b2 } => write!(
                f,
                "line has no elliptic caustic: lambda = {lambda} not in (0, {b2})"
            ),
            Error::InvalidArgument(what) => f.write_str(what),
            Error::Quadrature { achieved, requested } => write!(
                f,
                "quadrature did not converge: error estimate {achieved:e} > tolerance {requested:e}"
            ),
            Error::RootNotConverged { residual } => {
                write!(f, "root finding did not converge (residual {residual:e})")
            }
            Error::NoSolution { target, lo, hi } => write!(
                f,
                "no solution: target {target} outside the attainable range [{lo}, {hi}]"
            ),
            Error::NoClosure { steps, best_residual } => write!(
                f,
                "no Poncelet closure within {steps} reflections (best return residual {best_residual:e})"
            ),
            Error::PorismMismatch { spread } => write!(
                f,
                "Poncelet polygons from different starts disagree (relative perimeter spread {spread:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
