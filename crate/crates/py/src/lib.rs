//! Python bindings for `oracle_forge`.

use num_complex::Complex64;
use oracle_forge::brute::{min_cost_search as search, SearchOptions};
use oracle_forge::codec::{codon_bits as bits_for, decode_codon as decode_one, Chromosome};
use oracle_forge::eval::{circuit_unitary, evaluate as eval_circuit, is_success};
use oracle_forge::hqea::{evolve, run_batch as batch, HqeaParams, Problem};
use oracle_forge::kron::{apply_structured as apply_kernel, StructuredOperator};
use oracle_forge::targets::{builtin_with_qubits, goal_from_json, goal_to_json};
use oracle_forge::{
    gates, Circuit as CoreCircuit, CostModel, Encoding, Error, FitnessParams, GateSet, GoalSpec,
    Matrix, MulCounter,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &Matrix) -> Vec<Vec<Complex64>> {
    m.rows().map(|r| r.to_vec()).collect()
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<Matrix> {
    Matrix::from_rows(&rows).map_err(py_err)
}

/// A target unitary.
#[pyclass(name = "Goal", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGoal {
    inner: GoalSpec,
}

#[pymethods]
impl PyGoal {
    #[new]
    #[pyo3(signature = (qubits, matrix, optimal_cost=None))]
    fn new(qubits: usize, matrix: Vec<Vec<Complex64>>, optimal_cost: Option<u32>) -> PyResult<Self> {
        let inner = GoalSpec::new(qubits, from_rows(matrix)?, optimal_cost).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// One of swap, entangle2, entangle3, controlled_s, identity.
    #[staticmethod]
    #[pyo3(signature = (name, qubits=2))]
    fn builtin(name: &str, qubits: usize) -> PyResult<Self> {
        builtin_with_qubits(name, qubits)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(json: &str) -> PyResult<Self> {
        goal_from_json(json).map(|inner| Self { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        goal_to_json(&self.inner)
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.inner.qubits()
    }

    #[getter]
    fn optimal_cost(&self) -> Option<u32> {
        self.inner.optimal_cost()
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        to_rows(self.inner.matrix())
    }

    fn __repr__(&self) -> String {
        format!("Goal(qubits={})", self.inner.qubits())
    }
}

/// A decoded circuit over the default gate set.
#[pyclass(name = "Circuit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCircuit {
    inner: CoreCircuit,
}

#[pymethods]
impl PyCircuit {
    /// `gates` is a list of `(name, top)` pairs, e.g. `[("H", 0), ("CNOT", 0)]`.
    #[new]
    fn new(qubits: usize, gates: Vec<(String, usize)>) -> PyResult<Self> {
        let gs = GateSet::default();
        let placements = gates
            .into_iter()
            .map(|(name, top)| Ok(gates::Placement::new(gs.kind_by_name(&name)?, top)))
            .collect::<oracle_forge::Result<Vec<_>>>()
            .map_err(py_err)?;
        CoreCircuit::new(qubits, placements)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(json: &str) -> PyResult<Self> {
        CoreCircuit::from_json(json, &GateSet::default())
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json(&CostModel::default())
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.inner.qubits
    }

    #[getter]
    fn gates(&self) -> Vec<(String, usize)> {
        self.inner
            .placements
            .iter()
            .map(|p| (p.kind.name(), p.top))
            .collect()
    }

    #[getter]
    fn cost(&self) -> u32 {
        self.inner.cost(&CostModel::default())
    }

    fn unitary(&self) -> PyResult<Vec<Vec<Complex64>>> {
        circuit_unitary(&self.inner).map(|m| to_rows(&m)).map_err(py_err)
    }

    fn render_ascii(&self) -> String {
        self.inner.render_ascii()
    }

    fn __repr__(&self) -> String {
        let gates: Vec<String> = self.inner.placements.iter().map(|p| p.to_string()).collect();
        format!("Circuit([{}])", gates.join(", "))
    }
}

/// Outcome of one evolutionary run.
#[pyclass(name = "RunResult", frozen, get_all)]
struct PyRunResult {
    success: bool,
    generation_found: Option<usize>,
    generations_run: usize,
    circuit: PyCircuit,
    cost: u32,
    correctness: f64,
    fitness: f64,
    log_csv: String,
}

#[pyfunction]
fn case_count(qubits: usize) -> usize {
    gates::case_count(qubits, &GateSet::default())
}

#[pyfunction]
fn codon_bits(case_count: usize) -> usize {
    bits_for(case_count)
}

#[pyfunction]
fn decode_codon(s: u64, case_count: usize, k: usize) -> usize {
    decode_one(s, case_count, k)
}

/// Decodes a `0`/`1` string into a circuit on `qubits` wires.
#[pyfunction]
fn decode(bits: &str, qubits: usize) -> PyResult<PyCircuit> {
    let c = Chromosome::parse(bits).map_err(py_err)?;
    oracle_forge::codec::decode(&c, qubits, &GateSet::default())
        .map(|inner| PyCircuit { inner })
        .map_err(py_err)
}

fn fitness_params(satcost: u32, award: f64, punish: f64, eps: f64) -> PyResult<FitnessParams> {
    let p = FitnessParams {
        satcost,
        award,
        punish,
        eps,
    };
    p.validate().map_err(py_err)?;
    Ok(p)
}

#[pyfunction]
#[pyo3(signature = (circuit, goal, satcost, award=1.0, punish=20.0, eps=1e-6))]
fn evaluate<'py>(
    py: Python<'py>,
    circuit: &PyCircuit,
    goal: &PyGoal,
    satcost: u32,
    award: f64,
    punish: f64,
    eps: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = fitness_params(satcost, award, punish, eps)?;
    let e = eval_circuit(&circuit.inner, &goal.inner, &CostModel::default(), &p).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("correctness", e.correctness)?;
    d.set_item("allcost", e.allcost)?;
    d.set_item("fitness", e.fitness)?;
    d.set_item("success", is_success(&e, &p))?;
    Ok(d)
}

#[allow(clippy::too_many_arguments)]
fn build(
    goal: &PyGoal,
    g: usize,
    satcost: u32,
    award: f64,
    punish: f64,
    max_gen: usize,
    pop: usize,
    measurements: usize,
    seed: u64,
) -> PyResult<(Problem, HqeaParams)> {
    let enc = Encoding::new(goal.inner.qubits(), GateSet::default(), g).map_err(py_err)?;
    let problem = Problem::new(goal.inner.clone(), enc, CostModel::default()).map_err(py_err)?;
    let params = HqeaParams {
        pop_size: pop,
        measurements,
        max_gen,
        seed,
        fitness: fitness_params(satcost, award, punish, 1e-6)?,
        ..HqeaParams::default()
    };
    params.validate().map_err(py_err)?;
    Ok((problem, params))
}

/// Runs the evolutionary search once.
#[pyfunction]
#[pyo3(signature = (goal, g, satcost, punish=20.0, award=1.0, max_gen=100, pop=20, measurements=10, seed=0))]
#[allow(clippy::too_many_arguments)]
fn synthesize(
    py: Python<'_>,
    goal: &PyGoal,
    g: usize,
    satcost: u32,
    punish: f64,
    award: f64,
    max_gen: usize,
    pop: usize,
    measurements: usize,
    seed: u64,
) -> PyResult<PyRunResult> {
    let (problem, params) = build(goal, g, satcost, award, punish, max_gen, pop, measurements, seed)?;
    let r = py
        .detach(|| evolve(&problem, &params))
        .map_err(py_err)?;
    Ok(PyRunResult {
        success: r.success,
        generation_found: r.generation_found,
        generations_run: r.generations_run,
        cost: r.best.eval.allcost,
        correctness: r.best.eval.correctness,
        fitness: r.best.eval.fitness,
        log_csv: r.log_csv(),
        circuit: PyCircuit {
            inner: r.best.circuit,
        },
    })
}

/// Seeded batch; returns `{"runs", "ST", "AS", "OT"}`.
#[pyfunction]
#[pyo3(signature = (goal, g, satcost, runs, punish=20.0, award=1.0, max_gen=100, pop=20, measurements=10, base_seed=0))]
#[allow(clippy::too_many_arguments)]
fn run_batch<'py>(
    py: Python<'py>,
    goal: &PyGoal,
    g: usize,
    satcost: u32,
    runs: usize,
    punish: f64,
    award: f64,
    max_gen: usize,
    pop: usize,
    measurements: usize,
    base_seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (problem, params) = build(goal, g, satcost, award, punish, max_gen, pop, measurements, base_seed)?;
    let (stats, _) = py
        .detach(|| batch(&problem, &params, runs, base_seed))
        .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("runs", stats.runs)?;
    d.set_item("ST", stats.st)?;
    d.set_item("AS", stats.avg_success_gen)?;
    d.set_item("OT", stats.ot)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (goal, max_gates, budget=100_000_000, prune=true, eps=1e-6))]
fn min_cost_search<'py>(
    py: Python<'py>,
    goal: &PyGoal,
    max_gates: usize,
    budget: u128,
    prune: bool,
    eps: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = SearchOptions { eps, budget, prune };
    let r = py
        .detach(|| {
            search(
                &goal.inner,
                max_gates,
                &GateSet::default(),
                &CostModel::default(),
                &opts,
            )
        })
        .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("min_cost", r.min_cost)?;
    d.set_item("witness", r.witness.map(|inner| PyCircuit { inner }))?;
    d.set_item("circuits_examined", r.circuits_examined)?;
    Ok(d)
}

/// `(1_m ⊗ gate ⊗ 1_k) × b`; returns the product and the multiplication count.
#[pyfunction]
fn apply_structured(
    m: usize,
    gate: Vec<Vec<Complex64>>,
    k: usize,
    b: Vec<Vec<Complex64>>,
) -> PyResult<(Vec<Vec<Complex64>>, u64)> {
    let op = StructuredOperator::new(m, from_rows(gate)?, k).map_err(py_err)?;
    let mut counter = MulCounter::new();
    let out = apply_kernel(&op, &from_rows(b)?, &mut counter).map_err(py_err)?;
    Ok((to_rows(&out), counter.count()))
}

#[pyfunction]
fn speedup_predicted(m: usize, n: usize, k: usize) -> bool {
    oracle_forge::kron::speedup_predicted(m, n, k)
}

#[pymodule]
fn oracle_forge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGoal>()?;
    m.add_class::<PyCircuit>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(case_count, m)?)?;
    m.add_function(wrap_pyfunction!(codon_bits, m)?)?;
    m.add_function(wrap_pyfunction!(decode_codon, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(run_batch, m)?)?;
    m.add_function(wrap_pyfunction!(min_cost_search, m)?)?;
    m.add_function(wrap_pyfunction!(apply_structured, m)?)?;
    m.add_function(wrap_pyfunction!(speedup_predicted, m)?)?;
    Ok(())
}
