mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use run::{Failure, Outcome};

const THREADS_VAR: &str = "KOSZULAB_THREADS";

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = match v.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(format!("{THREADS_VAR} must be a positive integer, got `{v}`")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(Outcome::Usage as u8);
    }
    let json = cli.command.json();
    match run::dispatch(&cli.command) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.outcome as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(Outcome::Usage as u8)
        }
    }
}
