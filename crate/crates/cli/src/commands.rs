use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use oracle_forge::brute::{min_cost_search, SearchOptions};
use oracle_forge::eval::{evaluate, is_success};
use oracle_forge::hqea::{evolve, run_batch, HqeaParams, Problem};
use oracle_forge::kron::{bench_case, BenchRow};
use oracle_forge::targets::{builtin_with_qubits, load_goal};
use oracle_forge::{Circuit, Complex, CostModel, Encoding, FitnessParams, GateSet, GoalSpec, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{BenchArgs, BruteArgs, ConfigFile, GoalArgs, RunArgs, VerifyArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXHAUSTED: i32 = 2;

const DEFAULT_OUT_DIR: &str = "oracle-forge-out";

struct ResolvedGoal {
    label: String,
    spec: GoalSpec,
    gate_set: GateSet,
}

fn resolve_goal(args: &GoalArgs, config: &ConfigFile) -> Result<ResolvedGoal> {
    let mut gate_set = GateSet::default();
    if let Some(path) = args.gates.as_ref().or(config.gates.as_ref()) {
        gate_set
            .extend_from_file(path)
            .with_context(|| format!("loading gate file {}", path.display()))?;
    }
    let qubits = args.qubits.or(config.qubits).unwrap_or(2);
    let (label, spec) = match (&args.goal, &args.goal_file) {
        (Some(name), _) => (name.clone(), builtin_with_qubits(name, qubits)?),
        (None, Some(path)) => (
            path.display().to_string(),
            load_goal(path).with_context(|| format!("loading goal {}", path.display()))?,
        ),
        (None, None) => match (&config.goal, &config.goal_file) {
            (Some(name), _) => (name.clone(), builtin_with_qubits(name, qubits)?),
            (None, Some(path)) => (
                path.display().to_string(),
                load_goal(path).with_context(|| format!("loading goal {}", path.display()))?,
            ),
            (None, None) => bail!("a goal is required (--goal or --goal-file)"),
        },
    };
    Ok(ResolvedGoal {
        label,
        spec,
        gate_set,
    })
}

fn to_satcost(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| anyhow::anyhow!("satcost must be a non-negative integer, got {v}"))
}

/// Fully resolved run configuration: flags, then config file, then defaults.
struct RunConfig {
    goal: ResolvedGoal,
    g: usize,
    satcosts: Vec<u32>,
    punishes: Vec<f64>,
    params: HqeaParams,
    runs: usize,
    out_dir: Option<PathBuf>,
    csv: Option<PathBuf>,
}

fn resolve_run(args: &RunArgs) -> Result<RunConfig> {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str::<ConfigFile>(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => ConfigFile::default(),
    };
    let goal = resolve_goal(&args.goal, &config)?;

    let satcosts = if !args.satcost.is_empty() {
        args.satcost.iter().map(|&v| to_satcost(v)).collect::<Result<Vec<_>>>()?
    } else if let Some(v) = config.satcost {
        vec![to_satcost(v)?]
    } else if let Some(opt) = goal.spec.optimal_cost() {
        vec![opt]
    } else {
        bail!("--satcost is required for goals without a known optimal cost");
    };
    let punishes = if !args.punish.is_empty() {
        args.punish.clone()
    } else {
        vec![config.punish.unwrap_or(20.0)]
    };

    let g = args.g.or(config.g).unwrap_or(6);
    if g == 0 {
        bail!("--g must be at least 1");
    }
    let runs = args.runs.or(config.runs).unwrap_or(20);
    if runs == 0 {
        bail!("--runs must be at least 1");
    }
    let defaults = HqeaParams::default();
    let params = HqeaParams {
        pop_size: args.pop.or(config.pop).unwrap_or(defaults.pop_size),
        measurements: args
            .measurements
            .or(config.measurements)
            .unwrap_or(defaults.measurements),
        max_gen: args.max_gen.or(config.max_gen).unwrap_or(defaults.max_gen),
        delta_theta: args
            .delta_theta
            .or(config.delta_theta)
            .unwrap_or(defaults.delta_theta),
        mutation_prob: args
            .mutation
            .or(config.mutation)
            .unwrap_or(defaults.mutation_prob),
        clamp: true,
        seed: args.seed.or(config.seed).unwrap_or(0),
        fitness: FitnessParams {
            satcost: satcosts[0],
            award: args.award.or(config.award).unwrap_or(1.0),
            punish: punishes[0],
            eps: args.eps.or(config.eps).unwrap_or(1e-6),
        },
    };
    for &punish in &punishes {
        HqeaParams {
            fitness: FitnessParams {
                punish,
                ..params.fitness
            },
            ..params
        }
        .validate()?;
    }
    Ok(RunConfig {
        goal,
        g,
        satcosts,
        punishes,
        params,
        runs,
        out_dir: args.out_dir.clone().or(config.out_dir),
        csv: args.csv.clone(),
    })
}

fn problem(goal: &ResolvedGoal, g: usize) -> Result<Problem> {
    let encoding = Encoding::new(goal.spec.qubits(), goal.gate_set.clone(), g)?;
    Ok(Problem::new(
        goal.spec.clone(),
        encoding,
        CostModel::default(),
    )?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn synth(args: &RunArgs) -> Result<i32> {
    let cfg = resolve_run(args)?;
    if cfg.satcosts.len() != 1 || cfg.punishes.len() != 1 {
        bail!("synth takes a single --satcost and --punish; use `experiment` for sweeps");
    }
    let problem = problem(&cfg.goal, cfg.g)?;
    let result = evolve(&problem, &cfg.params)?;
    let cm = problem.cost_model;
    let best = &result.best;

    println!(
        "goal: {} ({} qubits), g={}, satcost={}, punish={}, seed={}",
        cfg.goal.label,
        cfg.goal.spec.qubits(),
        cfg.g,
        cfg.params.fitness.satcost,
        cfg.params.fitness.punish,
        cfg.params.seed
    );
    print!("{}", best.circuit.render_ascii());
    println!("cost: {}", best.eval.allcost);
    println!("correctness: {:.12}", best.eval.correctness);
    println!("fitness: {}", best.eval.fitness);
    match result.generation_found {
        Some(gen) => println!("success at generation {gen}"),
        None => println!(
            "no success within {} generations",
            result.generations_run
        ),
    }

    let out_dir = cfg
        .out_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let circuit_path = out_dir.join("circuit.json");
    let log_path = cfg
        .csv
        .clone()
        .unwrap_or_else(|| out_dir.join("generations.csv"));
    write_file(&circuit_path, &best.circuit.to_json(&cm))?;
    write_file(&log_path, &result.log_csv())?;
    println!(
        "wrote {} and {}",
        circuit_path.display(),
        log_path.display()
    );
    Ok(if result.success {
        EXIT_OK
    } else {
        EXIT_EXHAUSTED
    })
}

pub const EXPERIMENT_CSV_HEADER: &str = "goal,satcost,g,max_gen,punish,runs,AS,ST,OT";

pub fn experiment(args: &RunArgs) -> Result<i32> {
    let cfg = resolve_run(args)?;
    let problem = problem(&cfg.goal, cfg.g)?;
    let cm = problem.cost_model;

    let mut csv = String::from(EXPERIMENT_CSV_HEADER);
    csv.push('\n');
    println!(
        "{:<14} {:>7} {:>3} {:>7} {:>7} {:>4} {:>8} {:>4} {:>4}",
        "goal", "satcost", "g", "max_gen", "punish", "runs", "AS", "ST", "OT"
    );
    for &satcost in &cfg.satcosts {
        for &punish in &cfg.punishes {
            let params = HqeaParams {
                fitness: FitnessParams {
                    satcost,
                    punish,
                    ..cfg.params.fitness
                },
                ..cfg.params
            };
            let (stats, results) = run_batch(&problem, &params, cfg.runs, cfg.params.seed)?;
            let ot = stats.ot.map(|v| v.to_string());
            println!(
                "{:<14} {:>7} {:>3} {:>7} {:>7} {:>4} {:>8.2} {:>4} {:>4}",
                cfg.goal.label,
                satcost,
                cfg.g,
                params.max_gen,
                punish,
                stats.runs,
                stats.avg_success_gen,
                stats.st,
                ot.as_deref().unwrap_or("-")
            );
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{}",
                cfg.goal.label,
                satcost,
                cfg.g,
                params.max_gen,
                punish,
                stats.runs,
                stats.avg_success_gen,
                stats.st,
                ot.unwrap_or_default()
            )?;
            if let Some(dir) = &cfg.out_dir {
                for (i, r) in results.iter().enumerate() {
                    let seed = cfg.params.seed.wrapping_add(i as u64);
                    let stem = format!("sat{satcost}_punish{punish}_seed{seed}");
                    write_file(&dir.join(format!("{stem}.csv")), &r.log_csv())?;
                    write_file(
                        &dir.join(format!("{stem}.json")),
                        &r.best.circuit.to_json(&cm),
                    )?;
                }
            }
        }
    }
    if let Some(path) = &cfg.csv {
        write_file(path, &csv)?;
    }
    Ok(EXIT_OK)
}

pub fn verify(args: &VerifyArgs) -> Result<i32> {
    let goal = resolve_goal(&args.goal, &ConfigFile::default())?;
    let text = fs::read_to_string(&args.circuit)
        .with_context(|| format!("reading {}", args.circuit.display()))?;
    let circuit = Circuit::from_json(&text, &goal.gate_set)
        .with_context(|| format!("parsing circuit {}", args.circuit.display()))?;
    let satcost = args.satcost.map(to_satcost).transpose()?;
    let params = FitnessParams {
        satcost: satcost.unwrap_or(u32::MAX),
        eps: args.eps,
        ..FitnessParams::default()
    };
    let eval = evaluate(&circuit, &goal.spec, &CostModel::default(), &params)?;
    print!("{}", circuit.render_ascii());
    println!("correctness: {:.12}", eval.correctness);
    println!("cost: {}", eval.allcost);
    match satcost {
        Some(s) => println!("success: {} (satcost {s})", is_success(&eval, &params)),
        None => println!("correct: {}", eval.correctness >= 1.0 - args.eps),
    }
    Ok(EXIT_OK)
}

fn random_matrix(dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..dim * dim)
        .map(|_| Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    Matrix::from_vec(dim, data).expect("finite entries")
}

/// All power-of-two `(m, n, k)` with `n ≥ 2` and `m·n·k ≤ max_dim`.
pub fn sweep_cases(max_dim: usize) -> Vec<(usize, usize, usize)> {
    let pows: Vec<usize> = (0..usize::BITS)
        .map(|e| 1usize << e)
        .take_while(|&p| p <= max_dim)
        .collect();
    let mut cases = Vec::new();
    for &m in &pows {
        for &n in pows.iter().filter(|&&n| n >= 2) {
            for &k in &pows {
                if m * n * k <= max_dim {
                    cases.push((m, n, k));
                }
            }
        }
    }
    cases
}

pub fn bench_matmul(args: &BenchArgs) -> Result<i32> {
    let cases = if args.cases.is_empty() {
        sweep_cases(args.max_dim)
    } else {
        args.cases.clone()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut csv = String::from(BenchRow::CSV_HEADER);
    csv.push('\n');
    for (m, n, k) in cases {
        let dim = m * n * k;
        if dim > oracle_forge::linalg::DEFAULT_MAX_DIM {
            bail!("m·n·k = {dim} exceeds the maximum dimension");
        }
        let gate = random_matrix(n, &mut rng);
        let b = random_matrix(dim, &mut rng);
        let row = bench_case(&gate, m, k, &b)?;
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }
    print!("{csv}");
    if let Some(path) = &args.csv {
        write_file(path, &csv)?;
    }
    Ok(EXIT_OK)
}

pub fn brute(args: &BruteArgs) -> Result<i32> {
    let goal = resolve_goal(&args.goal, &ConfigFile::default())?;
    let opts = SearchOptions {
        eps: args.eps,
        budget: args.budget,
        prune: !args.no_prune,
    };
    let report = min_cost_search(
        &goal.spec,
        args.max_gates,
        &goal.gate_set,
        &CostModel::default(),
        &opts,
    )?;
    let json = report.to_json();
    println!("{json}");
    if let Some(dir) = &args.out_dir {
        write_file(&dir.join("brute.json"), &json)?;
    }
    Ok(EXIT_OK)
}
