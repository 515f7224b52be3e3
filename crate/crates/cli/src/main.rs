mod commands;
mod config;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use config::RunConfig;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Command {
    Sectors,
    Stability,
    Contract,
    Graphs,
    Aut,
    Order,
    P1,
    Ifun,
    Mu,
    Edge,
    Jwc,
    Verify,
}

/// Exact checks for GLSM quasimap wall-crossing data.
#[derive(Debug, Parser)]
#[command(name = "glsmx", version)]
struct Cli {
    command: Command,
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `truncations.y_max`
    #[arg(long)]
    y_order: Option<usize>,
    /// Overrides `truncations.q_max`
    #[arg(long)]
    q_order: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("glsmx: {}", e);
                return ExitCode::from(1);
            }
        },
        None => RunConfig::default(),
    };
    if let Some(y) = cli.y_order {
        cfg.truncations.y_max = y;
    }
    if let Some(q) = cli.q_order {
        cfg.truncations.q_max = q;
    }
    let report = commands::run(cli.command, &cfg);
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("glsmx: cannot write {}: {}", p.display(), e);
                return ExitCode::from(1);
            }
        }
        None => print!("{}", text),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
