use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use abshell::cli::{parse_config, run, CliError};

/// Sideband laboratory for a quantum system inside a driven Faraday shell.
#[derive(Parser)]
#[command(name = "abshell", version, about)]
struct Args {
    /// JSON run configuration
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Override the output path from the config
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Suppress notes on stderr
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(text) => text,
        Err(e) => return fail(&CliError::Io(e)),
    };
    let config = match parse_config(&text) {
        Ok(config) => config,
        Err(e) => return fail(&e),
    };
    match run(&config, args.output.as_deref(), args.quiet) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.record());
    ExitCode::from(err.exit_code())
}
