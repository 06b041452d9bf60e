use clap::{Args, Parser, Subcommand};

const ABOUT: &str = "Mather beta-function and related invariants of the elliptic billiard";

const LONG_ABOUT: &str = "\
Mather beta-function and related invariants of the elliptic billiard.

Sign convention: beta(rho) is reported with the positive sign, as the
perimeter of a Poncelet polygon of rotation number rho = m/n divided by n.
The classical Mather beta-function is the negative of this value.

Rotation numbers lie in (0, 1/2]; rho = 1/2 is the limit where the caustic
collapses onto the focal segment and beta = 2a. Caustics are the confocal
ellipses x^2/(a^2 - lambda) + y^2/(b^2 - lambda) = 1 with 0 < lambda < b^2.

Exit status: 0 ok, 2 domain or usage error, 3 no solution, 4 numerical
failure.";

#[derive(Debug, Parser)]
#[command(name = "ellbeta", version, about = ABOUT, long_about = LONG_ABOUT)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate beta and its companions for one caustic; JSON on stdout.
    Beta(BetaArgs),
    /// Tabulate beta on a uniform rho grid; CSV on stdout.
    Table(TableArgs),
    /// Trace a billiard orbit tangent to a caustic; JSON summary on stdout.
    Simulate(SimulateArgs),
    /// Reconstruct the table from beta values; JSON on stdout.
    #[command(subcommand)]
    Recover(RecoverMode),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TableShape {
    /// Major semi-axis.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Minor semi-axis, 0 < b < a.
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct CausticChoice {
    /// Rotation number in (0, 1/2].
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// Confocal parameter in (0, b^2).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BetaArgs {
    #[command(flatten)]
    pub table: TableShape,
    #[command(flatten)]
    pub caustic: CausticChoice,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub table: TableShape,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_min: f64,
    /// May be 1/2; that row uses the analytic limit (U = inf).
    #[arg(long, allow_negative_numbers = true)]
    pub rho_max: f64,
    /// Number of rows, endpoints included.
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub table: TableShape,
    #[command(flatten)]
    pub caustic: CausticChoice,
    /// Number of reflections to trace.
    #[arg(long)]
    pub steps: usize,
    /// Outer-normal angle of the first reflection point.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi0: f64,
    /// Closure tolerance; defaults to 1e-9 a.
    #[arg(long)]
    pub closure_tol: Option<f64>,
    /// Write the per-step orbit CSV here; "-" sends it to stdout and the
    /// summary to stderr.
    #[arg(long, value_name = "PATH")]
    pub orbit_csv: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum RecoverMode {
    /// From beta(1/2) = 2a and one more value beta(m/n).
    DiameterPair {
        #[arg(long)]
        beta_half: f64,
        /// Rotation number written as m/n, with 0 < m/n < 1/2.
        #[arg(long)]
        rho2: String,
        #[arg(long)]
        beta2: f64,
    },
    /// From beta(1/4) = sqrt(a^2 + b^2) and the circumference.
    QuarterLength {
        #[arg(long)]
        beta_quarter: f64,
        #[arg(long)]
        circumference: f64,
    },
}
