//! Hybrid quantum-inspired evolutionary algorithm.
//!
//! Each individual is a vector of Q-bits `(α, β)` with `α² + β² = 1`.
//! Per generation every Q-chromosome is observed `measurements` times; each
//! observed bit string gets per-bit classical mutation, is decoded and
//! evaluated, and the chromosome keeps its best observation of the
//! generation. The global best is elitist. Q-bits then rotate by
//! `delta_theta` toward the global best's bits wherever the chromosome's
//! observation disagrees and the global best has strictly lower fitness.
//!
//! Randomness: every Q-chromosome owns a ChaCha8 stream seeded from the run
//! seed with stream id equal to its population index, so results do not
//! depend on evaluation order.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codec::{Chromosome, Circuit, Encoding};
use crate::error::{Error, Result};
use crate::eval::{evaluate, is_success, EvalResult, FitnessParams, GoalSpec};
use crate::gates::CostModel;

/// Lower bound on `|β|` and `|α|` when clamping is enabled, as an angle.
pub const CLAMP_ANGLE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBit {
    alpha: f64,
    beta: f64,
}

impl Default for QBit {
    fn default() -> Self {
        Self::uniform()
    }
}

impl QBit {
    pub fn uniform() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: h, beta: h }
    }

    /// Normalizes `(alpha, beta)`; panics on the zero vector.
    pub fn new(alpha: f64, beta: f64) -> Self {
        let norm = alpha.hypot(beta);
        assert!(norm > 0.0, "Q-bit amplitudes cannot both be zero");
        Self {
            alpha: alpha / norm,
            beta: beta / norm,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Probability of observing 1.
    pub fn prob_one(&self) -> f64 {
        self.beta * self.beta
    }

    /// Rotates by `delta` in the direction that raises the probability of
    /// observing `bit`.
    pub fn rotate_toward(&mut self, bit: bool, delta: f64, clamp: bool) {
        let ab = self.alpha * self.beta;
        // sign of the angle that increases |β|
        let up = if ab > 0.0 {
            1.0
        } else if ab < 0.0 {
            -1.0
        } else if self.alpha == 0.0 {
            // |β| is already 1
            if bit {
                return;
            }
            1.0
        } else {
            if !bit {
                return;
            }
            1.0
        };
        let angle = if bit { up * delta } else { -up * delta };
        if clamp {
            // stay inside the current quadrant, CLAMP_ANGLE away from both axes
            let theta = self.beta.atan2(self.alpha);
            let base = (theta / FRAC_PI_2).floor() * FRAC_PI_2;
            let t = (theta + angle).clamp(base + CLAMP_ANGLE, base + FRAC_PI_2 - CLAMP_ANGLE);
            let (s, c) = t.sin_cos();
            self.alpha = c;
            self.beta = s;
        } else {
            let (s, c) = angle.sin_cos();
            let alpha = c * self.alpha - s * self.beta;
            let beta = s * self.alpha + c * self.beta;
            *self = Self::new(alpha, beta);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QChromosome {
    qbits: Vec<QBit>,
}

impl QChromosome {
    pub fn uniform(len: usize) -> Self {
        Self {
            qbits: vec![QBit::uniform(); len],
        }
    }

    pub fn from_qbits(qbits: Vec<QBit>) -> Self {
        Self { qbits }
    }

    pub fn qbits(&self) -> &[QBit] {
        &self.qbits
    }

    pub fn len(&self) -> usize {
        self.qbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qbits.is_empty()
    }
}

/// Samples every Q-bit independently: bit `i` is 1 with probability `β_i²`.
pub fn observe<R: Rng + ?Sized>(q: &QChromosome, rng: &mut R) -> Chromosome {
    Chromosome::new(
        q.qbits
            .iter()
            .map(|b| rng.random::<f64>() < b.prob_one())
            .collect(),
    )
}

fn mutate<R: Rng + ?Sized>(c: Chromosome, prob: f64, rng: &mut R) -> Chromosome {
    if prob <= 0.0 {
        return c;
    }
    Chromosome::new(
        c.bits()
            .iter()
            .map(|&b| b ^ (rng.random::<f64>() < prob))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HqeaParams {
    pub pop_size: usize,
    pub measurements: usize,
    pub max_gen: usize,
    /// Rotation step in radians.
    pub delta_theta: f64,
    /// Per-bit flip probability applied to observed strings.
    pub mutation_prob: f64,
    /// Keep `|β|` within `[sin 0.01, cos 0.01]`.
    pub clamp: bool,
    pub seed: u64,
    pub fitness: FitnessParams,
}

impl Default for HqeaParams {
    fn default() -> Self {
        Self {
            pop_size: 20,
            measurements: 10,
            max_gen: 100,
            delta_theta: 0.01 * std::f64::consts::PI,
            mutation_prob: 0.02,
            clamp: true,
            seed: 0,
            fitness: FitnessParams::default(),
        }
    }
}

impl HqeaParams {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 || self.measurements == 0 || self.max_gen == 0 {
            return Err(Error::Config(
                "pop_size, measurements and max_gen must be at least 1".into(),
            ));
        }
        if !(self.delta_theta.is_finite() && self.delta_theta > 0.0) {
            return Err(Error::Config("delta_theta must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return Err(Error::Config("mutation_prob must lie in [0, 1]".into()));
        }
        self.fitness.validate()
    }
}

/// Goal, encoding and cost model of one synthesis problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub goal: GoalSpec,
    pub encoding: Encoding,
    pub cost_model: CostModel,
}

impl Problem {
    pub fn new(goal: GoalSpec, encoding: Encoding, cost_model: CostModel) -> Result<Self> {
        if goal.qubits() != encoding.qubits() {
            return Err(Error::Config(format!(
                "goal acts on {} qubits but the encoding targets {}",
                goal.qubits(),
                encoding.qubits()
            )));
        }
        Ok(Self {
            goal,
            encoding,
            cost_model,
        })
    }

    pub fn evaluate(&self, c: &Chromosome, fitness: &FitnessParams) -> Result<Individual> {
        let circuit = self.encoding.decode(c)?;
        let eval = evaluate(&circuit, &self.goal, &self.cost_model, fitness)?;
        Ok(Individual {
            chromosome: c.clone(),
            circuit,
            eval,
        })
    }
}

/// An evaluated bit string.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub circuit: Circuit,
    pub eval: EvalResult,
}

/// Q-chromosomes plus their random streams.
#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<QChromosome>,
    rngs: Vec<ChaCha8Rng>,
}

impl Population {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `pop_size` uniform-superposition Q-chromosomes of `len` Q-bits.
pub fn init_population(params: &HqeaParams, len: usize) -> Population {
    let rngs = (0..params.pop_size)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(i as u64);
            rng
        })
        .collect();
    Population {
        members: vec![QChromosome::uniform(len); params.pop_size],
        rngs,
    }
}

/// Global best after a generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub best_fitness: f64,
    pub best_correctness: f64,
    pub best_cost: u32,
}

impl GenerationRecord {
    pub const CSV_HEADER: &'static str = "gen,best_fitness,best_correctness,best_cost";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.generation, self.best_fitness, self.best_correctness, self.best_cost
        )
    }
}

/// One evolutionary run in progress.
#[derive(Debug, Clone)]
pub struct Engine<'a> {
    problem: &'a Problem,
    params: HqeaParams,
    population: Population,
    best: Option<Individual>,
    generation: usize,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &'a Problem, params: HqeaParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            problem,
            params,
            population: init_population(&params, problem.encoding.chromosome_len()),
            best: None,
            generation: 0,
        })
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn best(&self) -> Option<&Individual> {
        self.best.as_ref()
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn is_solved(&self) -> bool {
        self.best
            .as_ref()
            .is_some_and(|b| is_success(&b.eval, &self.params.fitness))
    }

    /// Observes, evaluates and updates every Q-chromosome once. Returns the
    /// generation's best individual.
    pub fn step_generation(&mut self) -> Result<Individual> {
        let params = self.params;
        let problem = self.problem;
        let Population { members, rngs } = &mut self.population;

        let mut chromosome_bests = Vec::with_capacity(members.len());
        for (q, rng) in members.iter().zip(rngs.iter_mut()) {
            let mut local: Option<Individual> = None;
            for _ in 0..params.measurements {
                let bits = mutate(observe(q, rng), params.mutation_prob, rng);
                let ind = problem.evaluate(&bits, &params.fitness)?;
                if local
                    .as_ref()
                    .is_none_or(|l| ind.eval.fitness < l.eval.fitness)
                {
                    local = Some(ind);
                }
            }
            chromosome_bests.push(local.expect("measurements >= 1"));
        }

        let gen_best = chromosome_bests
            .iter()
            .reduce(|a, b| if b.eval.fitness < a.eval.fitness { b } else { a })
            .expect("pop_size >= 1")
            .clone();
        if self
            .best
            .as_ref()
            .is_none_or(|b| gen_best.eval.fitness < b.eval.fitness)
        {
            self.best = Some(gen_best.clone());
        }
        let best = self.best.as_ref().expect("set above");

        for (q, local) in members.iter_mut().zip(&chromosome_bests) {
            if best.eval.fitness < local.eval.fitness {
                let target = best.chromosome.bits();
                for ((qbit, &have), &want) in
                    q.qbits.iter_mut().zip(local.chromosome.bits()).zip(target)
                {
                    if have != want {
                        qbit.rotate_toward(want, params.delta_theta, params.clamp);
                    }
                }
            }
        }

        self.generation += 1;
        Ok(gen_best)
    }

    pub fn record(&self) -> Option<GenerationRecord> {
        self.best.as_ref().map(|b| GenerationRecord {
            generation: self.generation,
            best_fitness: b.eval.fitness,
            best_correctness: b.eval.correctness,
            best_cost: b.eval.allcost,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub success: bool,
    pub best: Individual,
    pub generation_found: Option<usize>,
    pub generations_run: usize,
    pub log: Vec<GenerationRecord>,
}

impl RunResult {
    pub fn best_circuit(&self) -> &Circuit {
        &self.best.circuit
    }

    pub fn best_eval(&self) -> &EvalResult {
        &self.best.eval
    }

    pub fn log_csv(&self) -> String {
        let mut out = String::from(GenerationRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.log {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }
}

/// Runs until the global best succeeds or `max_gen` generations elapse.
pub fn evolve(problem: &Problem, params: &HqeaParams) -> Result<RunResult> {
    let mut engine = Engine::new(problem, *params)?;
    let mut log = Vec::new();
    let mut generation_found = None;
    while engine.generation() < params.max_gen {
        engine.step_generation()?;
        log.push(engine.record().expect("best exists after a step"));
        if engine.is_solved() {
            generation_found = Some(engine.generation());
            break;
        }
    }
    Ok(RunResult {
        success: generation_found.is_some(),
        best: engine.best.expect("at least one generation"),
        generation_found,
        generations_run: engine.generation,
        log,
    })
}

/// Aggregate over a batch of seeded runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchStats {
    pub runs: usize,
    /// Successful runs.
    pub st: usize,
    /// Mean success generation; 0 when nothing succeeded.
    pub avg_success_gen: f64,
    /// Successful runs whose best cost equals the goal's known optimum.
    pub ot: Option<usize>,
}

impl BatchStats {
    pub fn from_runs(results: &[RunResult], optimal_cost: Option<u32>) -> Self {
        let gens: Vec<usize> = results.iter().filter_map(|r| r.generation_found).collect();
        let avg_success_gen = if gens.is_empty() {
            0.0
        } else {
            gens.iter().sum::<usize>() as f64 / gens.len() as f64
        };
        let ot = optimal_cost.map(|opt| {
            results
                .iter()
                .filter(|r| r.success && r.best.eval.allcost == opt)
                .count()
        });
        Self {
            runs: results.len(),
            st: gens.len(),
            avg_success_gen,
            ot,
        }
    }
}

/// `n_runs` independent runs seeded `base_seed + i`, executed in parallel and
/// returned in seed order.
pub fn run_batch(
    problem: &Problem,
    params: &HqeaParams,
    n_runs: usize,
    base_seed: u64,
) -> Result<(BatchStats, Vec<RunResult>)> {
    if n_runs == 0 {
        return Err(Error::Config("a batch needs at least one run".into()));
    }
    let results = (0..n_runs)
        .into_par_iter()
        .map(|i| {
            let p = HqeaParams {
                seed: base_seed.wrapping_add(i as u64),
                ..*params
            };
            evolve(problem, &p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        BatchStats::from_runs(&results, problem.goal.optimal_cost()),
        results,
    ))
}
