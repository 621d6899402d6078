mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use commands::Command;
use config::{CommonArgs, RunConfig};

/// Blocks, KL decomposition matrices, Ext tables and truncation checks for parabolic category O.
#[derive(Parser, Debug)]
#[command(name = "paro", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(&cli.common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("paro: {e}");
            return ExitCode::from(2);
        }
    };
    let threads = cfg.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    // the global pool can only be set once; a failure here means it already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();

    let reports = match commands::run(cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("paro {}: {e}", cli.command.name());
            return ExitCode::from(2);
        }
    };
    let text = output::render(&reports, cfg.format);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("paro: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
