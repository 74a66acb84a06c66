//! Circuit unitary, correctness, cost and fitness.

use serde::{Deserialize, Serialize};

use crate::codec::Circuit;
use crate::error::{Error, Result};
use crate::gates::CostModel;
use crate::kron::apply_structured_with;
use crate::linalg::{is_unitary, trace_adjoint_product, Matrix, MulCounter};

/// Target unitary on `qubits` wires.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalSpec {
    qubits: usize,
    matrix: Matrix,
    optimal_cost: Option<u32>,
}

impl GoalSpec {
    pub const UNITARY_TOL: f64 = 1e-10;

    pub fn new(qubits: usize, matrix: Matrix, optimal_cost: Option<u32>) -> Result<Self> {
        Self::with_tolerance(qubits, matrix, optimal_cost, Self::UNITARY_TOL)
    }

    pub fn with_tolerance(
        qubits: usize,
        matrix: Matrix,
        optimal_cost: Option<u32>,
        tol: f64,
    ) -> Result<Self> {
        if qubits == 0 || qubits >= usize::BITS as usize || matrix.dim() != 1 << qubits {
            return Err(Error::InvalidMatrix(format!(
                "goal on {qubits} qubits needs dimension 2^{qubits}, got {}",
                matrix.dim()
            )));
        }
        let deviation = crate::linalg::unitarity_deviation(&matrix);
        if deviation > tol {
            return Err(Error::NotUnitary { deviation, tol });
        }
        Ok(Self {
            qubits,
            matrix,
            optimal_cost,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn optimal_cost(&self) -> Option<u32> {
        self.optimal_cost
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessParams {
    pub satcost: u32,
    pub award: f64,
    pub punish: f64,
    /// Correctness must reach `1 - eps` for success.
    pub eps: f64,
}

impl Default for FitnessParams {
    fn default() -> Self {
        Self {
            satcost: 0,
            award: 1.0,
            punish: 20.0,
            eps: 1e-6,
        }
    }
}

impl FitnessParams {
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        if !finite_nonneg(self.award) || !finite_nonneg(self.punish) {
            return Err(Error::Config("award and punish must be non-negative".into()));
        }
        if self.award == 0.0 && self.punish == 0.0 {
            return Err(Error::Config("award and punish cannot both be zero".into()));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Config("eps must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub lambda: Matrix,
    pub correctness: f64,
    pub allcost: u32,
    pub fitness: f64,
}

/// Product of the embedded gate matrices, last gate leftmost. Wire steps
/// contribute no factor.
pub fn circuit_unitary(c: &Circuit) -> Result<Matrix> {
    circuit_unitary_counted(c, &mut MulCounter::new())
}

pub fn circuit_unitary_counted(c: &Circuit, counter: &mut MulCounter) -> Result<Matrix> {
    let mut acc = Matrix::identity(1 << c.qubits);
    for p in c.gates() {
        let op = p.operator(c.qubits)?.expect("wire filtered out");
        acc = apply_structured_with(&op, &acc, counter, true)?;
    }
    Ok(acc)
}

/// `|tr(G† λ)| / 2^m`.
pub fn correctness(lambda: &Matrix, goal: &GoalSpec) -> Result<f64> {
    let t = trace_adjoint_product(&goal.matrix, lambda)?;
    Ok(t.norm() / goal.matrix.dim() as f64)
}

pub fn allcost(c: &Circuit, cm: &CostModel) -> u32 {
    c.cost(cm)
}

/// `award·(allcost − satcost) + punish·(1 − correctness)`; lower is better.
pub fn fitness(allcost: u32, correctness: f64, p: &FitnessParams) -> f64 {
    p.award * (allcost as f64 - p.satcost as f64) + p.punish * (1.0 - correctness)
}

pub fn evaluate(
    c: &Circuit,
    goal: &GoalSpec,
    cm: &CostModel,
    p: &FitnessParams,
) -> Result<EvalResult> {
    if c.qubits != goal.qubits {
        return Err(Error::DimensionMismatch(c.qubits, goal.qubits));
    }
    let lambda = circuit_unitary(c)?;
    let correctness = correctness(&lambda, goal)?;
    let allcost = allcost(c, cm);
    Ok(EvalResult {
        fitness: fitness(allcost, correctness, p),
        lambda,
        correctness,
        allcost,
    })
}

pub fn is_success(e: &EvalResult, p: &FitnessParams) -> bool {
    e.correctness >= 1.0 - p.eps && e.allcost <= p.satcost
}

/// Sanity check used by tests and the CLI.
pub fn lambda_is_unitary(e: &EvalResult) -> bool {
    is_unitary(&e.lambda, 1e-10)
}
