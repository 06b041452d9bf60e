use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ellbeta::args::Cli;
use ellbeta::commands;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let status = match commands::run(&cli.command, &mut out, &mut err) {
        Ok(()) => ellbeta::exit::OK,
        Err(e) => {
            let _ = writeln!(err, "ellbeta: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(status as u8)
}
