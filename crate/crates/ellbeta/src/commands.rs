//! The four subcommands. Each writes its primary output to `out` and
//! anything secondary to `err`.

use std::fs::File;
use std::io::{BufWriter, Write};

use ellbeta_core::beta::{beta_of_caustic, BetaEvaluation};
use ellbeta_core::billiard::{gen_function, joachimsthal, momenta_product};
use ellbeta_core::poncelet::{default_tolerance, detect_closure, launch_tangent, run_orbit, OrbitRecord};
use ellbeta_core::rigidity::{recover_from_diameter_pair, recover_from_quarter_and_length, Rational, Recovery};
use ellbeta_core::{beta_of_rho, caustic_from_lambda, lambda_from_rho, CausticParam, Ellipse};

use crate::args::{BetaArgs, CausticChoice, Command, RecoverMode, SimulateArgs, TableArgs, TableShape};
use crate::format::{csv_row, Object};
use crate::CliError;

pub const TABLE_HEADER: &str = "rho,lambda,beta,lazutkin,U,caustic_perimeter";
pub const ORBIT_HEADER: &str = "step,x,y,p,phi,psi,delta,J,lambda";

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Beta(a) => cmd_beta(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Recover(m) => cmd_recover(m, out),
    }
}

fn ellipse(t: &TableShape) -> Result<Ellipse, CliError> {
    Ok(Ellipse::new(t.a, t.b)?)
}

fn evaluate(e: &Ellipse, choice: &CausticChoice) -> Result<BetaEvaluation, CliError> {
    match (choice.rho, choice.lambda) {
        (Some(rho), None) => Ok(beta_of_rho(e, rho)?),
        (None, Some(lambda)) => Ok(beta_of_caustic(e, &caustic_from_lambda(e, lambda)?)),
        _ => Err(CliError::Usage("exactly one of --rho and --lambda is required".into())),
    }
}

fn beta_json(ev: &BetaEvaluation) -> Object {
    Object::new()
        .with("rho", ev.rho)
        .with("lambda", ev.lambda)
        .with("beta", ev.beta)
        .with("lazutkin", ev.lazutkin)
        .with("caustic_perimeter", ev.caustic_perimeter)
        .with("phi", ev.phi)
        .with("k", ev.k)
        .with("f", ev.f)
        .with("J", ev.joachimsthal)
}

pub fn cmd_beta(args: &BetaArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let e = ellipse(&args.table)?;
    let ev = evaluate(&e, &args.caustic)?;
    writeln!(out, "{}", beta_json(&ev).to_json())?;
    Ok(())
}

/// Grid `rho_min + (rho_max − rho_min)·i/(steps − 1)`; one row at
/// `rho_min` when `steps = 1`.
pub fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let e = ellipse(&args.table)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(args.rho_min <= args.rho_max) {
        return Err(CliError::Usage("--rho-min must not exceed --rho-max".into()));
    }
    let mut rows = Vec::with_capacity(args.steps);
    for i in 0..args.steps {
        // the last row hits rho_max exactly so that 1/2 takes the limit path
        let rho = if args.steps == 1 {
            args.rho_min
        } else if i == args.steps - 1 {
            args.rho_max
        } else {
            args.rho_min + (args.rho_max - args.rho_min) * i as f64 / (args.steps - 1) as f64
        };
        let ev = beta_of_rho(&e, rho)?;
        rows.push(csv_row(&[ev.rho, ev.lambda, ev.beta, ev.lazutkin, ev.total_measure, ev.caustic_perimeter]));
    }
    writeln!(out, "{TABLE_HEADER}")?;
    for r in rows {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

fn caustic(e: &Ellipse, choice: &CausticChoice) -> Result<CausticParam, CliError> {
    match (choice.rho, choice.lambda) {
        (Some(rho), None) => Ok(lambda_from_rho(e, rho)?),
        (None, Some(lambda)) => Ok(caustic_from_lambda(e, lambda)?),
        _ => Err(CliError::Usage("exactly one of --rho and --lambda is required".into())),
    }
}

fn write_orbit(e: &Ellipse, rec: &OrbitRecord, w: &mut dyn Write) -> Result<(), CliError> {
    let b2 = e.b() * e.b();
    writeln!(w, "{ORBIT_HEADER}")?;
    for i in 0..rec.lines.len() {
        let (v, l, s) = (rec.vertices[i], rec.lines[i], rec.states[i]);
        let row = csv_row(&[
            v.x,
            v.y,
            l.p,
            rec.unreduced_phi(i),
            s.psi,
            s.delta,
            joachimsthal(e, &s),
            b2 - momenta_product(e, &l),
        ]);
        writeln!(w, "{i},{row}")?;
    }
    Ok(())
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let e = ellipse(&args.table)?;
    if args.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1 (empty orbit)".into()));
    }
    let tol = args.closure_tol.unwrap_or_else(|| default_tolerance(&e));
    if !(tol > 0.0) {
        return Err(CliError::Usage("--closure-tol must be positive".into()));
    }
    let cp = caustic(&e, &args.caustic)?;
    let ev = beta_of_caustic(&e, &cp);
    let rec = run_orbit(&e, &launch_tangent(&e, &cp, args.psi0), args.steps)?;
    let closure = detect_closure(&e, &rec, tol);
    let empirical = closure.map(|c| {
        let s: f64 = (1..=c.n).map(|i| gen_function(&e, rec.unreduced_phi(i - 1), rec.unreduced_phi(i))).sum();
        s / c.n as f64
    });
    let summary = Object::new()
        .with("steps", rec.steps())
        .with("lambda", cp.lambda())
        .with("rho", ev.rho)
        .with("beta", ev.beta)
        .with(
            "closure",
            closure.map(|c| Object::new().with("n", c.n).with("m", c.m).with("residual", c.residual)),
        )
        .with("empirical_beta", empirical)
        .with("empirical_rotation", rec.empirical_rotation())
        .with("perimeter", rec.perimeter)
        .with("action", rec.action)
        .with(
            "drift",
            Object::new()
                .with("J", rec.drift_j)
                .with("lambda", rec.drift_lambda)
                .with("momenta", rec.drift_momenta),
        )
        .with("min_delta", rec.min_delta)
        .with("near_tangent", rec.near_tangent)
        .to_json();
    match args.orbit_csv.as_deref() {
        Some("-") => {
            write_orbit(&e, &rec, out)?;
            writeln!(err, "{summary}")?;
        }
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_orbit(&e, &rec, &mut w)?;
            w.flush()?;
            writeln!(out, "{summary}")?;
        }
        None => writeln!(out, "{summary}")?,
    }
    Ok(())
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("--rho2 must be written m/n with 0 < m/n < 1/2, got {s:?}"));
    let (m, n) = s.split_once('/').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    Ok(Rational::new(m, n)?)
}

fn recovery_json(r: &Recovery) -> Object {
    Object::new()
        .with("a", r.ellipse.a())
        .with("b", r.ellipse.b())
        .with("residual", r.residual)
        .with("monotone", r.monotone)
}

pub fn cmd_recover(mode: &RecoverMode, out: &mut dyn Write) -> Result<(), CliError> {
    let r = match mode {
        RecoverMode::DiameterPair { beta_half, rho2, beta2 } => {
            recover_from_diameter_pair(*beta_half, parse_rational(rho2)?, *beta2)?
        }
        RecoverMode::QuarterLength { beta_quarter, circumference } => {
            recover_from_quarter_and_length(*beta_quarter, *circumference)?
        }
    };
    writeln!(out, "{}", recovery_json(&r).to_json())?;
    Ok(())
}
