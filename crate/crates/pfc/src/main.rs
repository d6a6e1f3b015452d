mod cli;
mod commands;
mod config;
mod error;
mod format;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command, Format};
use config::{FileConfig, Settings, MAX_GROUND_ENV};
use error::CliResult;

fn run(cli: Cli) -> CliResult<()> {
    let file = match &cli.global.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let (t_order, n) = match &cli.command {
        Command::Verify(v) => (v.t_order, v.n),
        _ => (None, None),
    };
    let settings = Settings::resolve(
        file,
        std::env::var(MAX_GROUND_ENV).ok(),
        cli.global.jobs,
        cli.global.seed,
        t_order,
        n,
    )?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let format = cli.global.format;
    match &cli.command {
        Command::Enumerate(a) => commands::enumerate::run(a, &settings, format.unwrap_or(Format::Text), &mut out)?,
        Command::Query(a) => commands::query::run(a, format.unwrap_or(Format::Text), &mut out)?,
        Command::Export(a) => commands::export::run(a, &settings, format, &mut out)?,
        Command::Verify(a) => verify::run(a, &settings, format.unwrap_or(Format::Text), &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pfc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
