mod cli;
mod commands;
mod config;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use cli::{Cli, Command, Format};

fn run(cli: &Cli) -> Result<bool> {
    let format = |default| cli.format.unwrap_or(default);
    let out = match &cli.command {
        Command::Constants => commands::constants(format(Format::Csv)),
        Command::Landau(args) => commands::landau(args, format(Format::Csv))?,
        Command::LandauTable(args) => commands::landau_table(args, format(Format::Csv))?,
        Command::Bloch(args) => commands::bloch(args, format(Format::Json))?,
        Command::Check(args) => commands::check(args, format(Format::Json))?,
        Command::Variability(args) => commands::variability(args, format(Format::Csv))?,
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(out.passed)
}

fn main() -> ExitCode {
    let args = match config::splice(std::env::args_os().collect()) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
