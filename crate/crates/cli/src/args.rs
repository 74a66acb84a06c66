use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "oracle-forge",
    version,
    about = "Evolve quantum oracle circuits from a target unitary"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one evolutionary synthesis.
    Synth(RunArgs),
    /// Run seeded batches over satcost/punish sweeps and print AS/ST/OT rows.
    Experiment(RunArgs),
    /// Check a circuit file against a goal.
    Verify(VerifyArgs),
    /// Compare the structured kernel against schoolbook multiplication.
    BenchMatmul(BenchArgs),
    /// Exhaustive minimal-cost search.
    Brute(BruteArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GoalArgs {
    /// Builtin goal: swap, entangle2, entangle3, controlled_s, identity.
    #[arg(long)]
    pub goal: Option<String>,
    /// Goal matrix file (JSON).
    #[arg(long, conflicts_with = "goal")]
    pub goal_file: Option<PathBuf>,
    /// Register size for the identity goal.
    #[arg(long)]
    pub qubits: Option<usize>,
    /// Extra gates to append to the default {S, T, H | CNOT} catalog.
    #[arg(long)]
    pub gates: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub goal: GoalArgs,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Satisfying cost (comma-separated list sweeps in `experiment`).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub satcost: Vec<i64>,
    /// Maximal number of gates.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub award: Option<f64>,
    /// Punish factor (comma-separated list sweeps in `experiment`).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub punish: Vec<f64>,
    #[arg(long)]
    pub max_gen: Option<usize>,
    /// Number of Q-chromosomes.
    #[arg(long)]
    pub pop: Option<usize>,
    /// Observations per Q-chromosome per generation.
    #[arg(long)]
    pub measurements: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Runs per configuration (`experiment`).
    #[arg(long)]
    pub runs: Option<usize>,
    /// Correctness tolerance.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Per-bit flip probability on observed strings.
    #[arg(long)]
    pub mutation: Option<f64>,
    /// Rotation step in radians.
    #[arg(long)]
    pub delta_theta: Option<f64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Write the result table (experiment) or generation log (synth) here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Values a config file may set. Field names match the long flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub goal: Option<String>,
    pub goal_file: Option<PathBuf>,
    pub qubits: Option<usize>,
    pub gates: Option<PathBuf>,
    pub satcost: Option<i64>,
    pub g: Option<usize>,
    pub award: Option<f64>,
    pub punish: Option<f64>,
    pub max_gen: Option<usize>,
    pub pop: Option<usize>,
    pub measurements: Option<usize>,
    pub seed: Option<u64>,
    pub runs: Option<usize>,
    pub eps: Option<f64>,
    pub mutation: Option<f64>,
    pub delta_theta: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Circuit JSON as written by `synth`.
    #[arg(long)]
    pub circuit: PathBuf,
    #[command(flatten)]
    pub goal: GoalArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub satcost: Option<i64>,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Explicit cases as m,n,k triples, e.g. `--case 8,2,8`.
    #[arg(long = "case", value_parser = parse_triple)]
    pub cases: Vec<(usize, usize, usize)>,
    /// Sweep all power-of-two triples with m·n·k ≤ this bound (n ≥ 2).
    #[arg(long, default_value_t = 64)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BruteArgs {
    #[command(flatten)]
    pub goal: GoalArgs,
    #[arg(long, default_value_t = 3)]
    pub max_gates: usize,
    /// Maximum number of circuits to examine.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u128,
    #[arg(long)]
    pub no_prune: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [m, n, k] if [m, n, k].iter().all(|d| d.is_power_of_two()) => Ok((m, n, k)),
        [_, _, _] => Err("m, n and k must be powers of two".into()),
        _ => Err(format!("expected m,n,k, got `{s}`")),
    }
}
