mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn init_threads() {
    if let Ok(value) = std::env::var("ORACLE_FORGE_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("ignoring ORACLE_FORGE_THREADS={value:?}: expected a positive integer"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    init_threads();
    let outcome = match &cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Verify(a) => commands::verify(a),
        Command::BenchMatmul(a) => commands::bench_matmul(a),
        Command::Brute(a) => commands::brute(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
