//! Built-in benchmark goals and goal-file I/O.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codec::Circuit;
use crate::error::{Error, Result};
use crate::eval::GoalSpec;
use crate::gates::{gate_matrix, GateKind, Placement};
use crate::linalg::{kron, mat_mul, Complex, Matrix};

/// Names accepted by [`builtin`].
pub const BUILTIN_GOALS: [&str; 5] = ["swap", "entangle2", "entangle3", "controlled_s", "identity"];

/// Tolerance for unitarity of goals read from disk.
pub const GOAL_FILE_TOL: f64 = 1e-8;

fn gate(kind: GateKind) -> Matrix {
    gate_matrix(&kind).expect("builtin gate")
}

fn i2() -> Matrix {
    Matrix::identity(2)
}

pub fn swap_matrix() -> Matrix {
    Matrix::from_real(
        4,
        &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.],
    )
    .expect("static matrix")
}

/// Bell-state preparation: `CNOT × (H ⊗ I)`.
pub fn entangle2_matrix() -> Matrix {
    let h_i = kron(&gate(GateKind::H), &i2()).unwrap();
    mat_mul(&gate(GateKind::CnotDown), &h_i).unwrap()
}

/// GHZ preparation: `(I ⊗ CNOT) × (CNOT ⊗ I) × (H ⊗ I ⊗ I)`.
pub fn entangle3_matrix() -> Matrix {
    let cnot = gate(GateKind::CnotDown);
    let h_ii = kron(&gate(GateKind::H), &Matrix::identity(4)).unwrap();
    let cnot_i = kron(&cnot, &i2()).unwrap();
    let i_cnot = kron(&i2(), &cnot).unwrap();
    mat_mul(&i_cnot, &mat_mul(&cnot_i, &h_ii).unwrap()).unwrap()
}

/// `diag(1, 1, 1, i)`.
pub fn controlled_s_matrix() -> Matrix {
    let one = Complex::new(1.0, 0.0);
    Matrix::diag(&[one, one, one, Complex::new(0.0, 1.0)])
}

pub fn builtin(name: &str) -> Result<GoalSpec> {
    builtin_with_qubits(name, 2)
}

/// As [`builtin`]; `identity_qubits` sizes the `identity` goal and is
/// ignored by the fixed-size benchmarks.
pub fn builtin_with_qubits(name: &str, identity_qubits: usize) -> Result<GoalSpec> {
    let normalized = name.to_ascii_lowercase().replace('-', "_");
    match normalized.as_str() {
        "swap" => GoalSpec::new(2, swap_matrix(), Some(6)),
        "entangle2" => GoalSpec::new(2, entangle2_matrix(), Some(3)),
        "entangle3" => GoalSpec::new(3, entangle3_matrix(), Some(5)),
        "controlled_s" => GoalSpec::new(2, controlled_s_matrix(), Some(7)),
        "identity" => {
            if identity_qubits == 0 || identity_qubits > 10 {
                return Err(Error::Config(format!(
                    "identity goal needs 1..=10 qubits, got {identity_qubits}"
                )));
            }
            GoalSpec::new(identity_qubits, Matrix::identity(1 << identity_qubits), Some(0))
        }
        _ => Err(Error::UnknownGoal {
            name: name.to_string(),
            available: BUILTIN_GOALS.join(", "),
        }),
    }
}

/// Known optimal circuits for the benchmarks whose figures give a gate list.
pub fn reference_circuit(name: &str) -> Option<Circuit> {
    use GateKind::*;
    let (m, gates): (usize, Vec<(GateKind, usize)>) = match name {
        "swap" => (2, vec![(CnotDown, 0), (CnotUp, 0), (CnotDown, 0)]),
        "entangle2" => (2, vec![(H, 0), (CnotDown, 0)]),
        "entangle3" => (3, vec![(H, 0), (CnotDown, 0), (CnotDown, 1)]),
        _ => return None,
    };
    let placements = gates
        .into_iter()
        .map(|(k, top)| Placement::new(k, top))
        .collect();
    Circuit::new(m, placements).ok()
}

/// Goal file layout: `matrix` is a list of rows of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoalFile {
    pub qubits: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_cost: Option<u32>,
}

impl GoalFile {
    pub fn from_goal(goal: &GoalSpec) -> Self {
        Self {
            qubits: goal.qubits(),
            matrix: goal
                .matrix()
                .rows()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            optimal_cost: goal.optimal_cost(),
        }
    }

    pub fn into_goal(self) -> Result<GoalSpec> {
        let rows: Vec<Vec<Complex>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex::new(re, im)).collect())
            .collect();
        let matrix = Matrix::from_rows(&rows)?;
        if !matrix.dim().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(matrix.dim()));
        }
        GoalSpec::with_tolerance(self.qubits, matrix, self.optimal_cost, GOAL_FILE_TOL)
    }
}

pub fn goal_from_json(json: &str) -> Result<GoalSpec> {
    serde_json::from_str::<GoalFile>(json)?.into_goal()
}

pub fn goal_to_json(goal: &GoalSpec) -> String {
    serde_json::to_string_pretty(&GoalFile::from_goal(goal)).expect("goal serializes")
}

pub fn load_goal(path: impl AsRef<Path>) -> Result<GoalSpec> {
    goal_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_goal(goal: &GoalSpec, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, goal_to_json(goal))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{circuit_unitary, correctness};
    use crate::linalg::unitarity_deviation;

    #[test]
    fn swap_exchanges_qubits() {
        let g = builtin("swap").unwrap();
        // column |01> (index 1) maps to |10> (index 2)
        let col: Vec<Complex> = (0..4).map(|r| g.matrix().get(r, 1)).collect();
        assert_eq!(col[2], Complex::new(1.0, 0.0));
        assert_eq!(col.iter().map(|z| z.norm()).sum::<f64>(), 1.0);
        assert_eq!(g.optimal_cost(), Some(6));
    }

    #[test]
    fn entangle2_prepares_bell_state() {
        let g = builtin("entangle2").unwrap();
        let zero = Complex::new(0.0, 0.0);
        let out = g
            .matrix()
            .apply(&[Complex::new(1.0, 0.0), zero, zero, zero])
            .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [h, 0.0, 0.0, h];
        for (z, w) in out.iter().zip(want) {
            assert!((z - Complex::new(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn controlled_s_is_diagonal() {
        let g = builtin("controlled-S").unwrap();
        assert_eq!(g.matrix(), &controlled_s_matrix());
        assert_eq!(g.matrix().get(3, 3), Complex::new(0.0, 1.0));
        assert_eq!(g.optimal_cost(), Some(7));
    }

    #[test]
    fn unknown_goal_lists_names() {
        let err = builtin("toffoli").unwrap_err().to_string();
        assert!(err.contains("entangle3") && err.contains("controlled_s"), "{err}");
    }

    #[test]
    fn builtins_are_unitary() {
        for name in BUILTIN_GOALS {
            let g = builtin(name).unwrap();
            assert!(unitarity_deviation(g.matrix()) <= 1e-15, "{name}");
        }
    }

    #[test]
    fn reference_circuits_hit_goals() {
        for name in ["swap", "entangle2", "entangle3"] {
            let g = builtin(name).unwrap();
            let c = reference_circuit(name).unwrap();
            let lambda = circuit_unitary(&c).unwrap();
            assert!((correctness(&lambda, &g).unwrap() - 1.0).abs() <= 1e-12, "{name}");
            assert_eq!(
                Some(c.cost(&Default::default())),
                g.optimal_cost(),
                "{name}"
            );
        }
    }

    #[test]
    fn goal_round_trip() {
        let g = builtin("entangle3").unwrap();
        let back = goal_from_json(&goal_to_json(&g)).unwrap();
        assert_eq!(back.qubits(), 3);
        assert_eq!(back.optimal_cost(), Some(5));
        assert!(back.matrix().max_abs_diff(g.matrix()).unwrap() <= 1e-15);
    }

    #[test]
    fn goal_file_rejects_non_unitary() {
        let json = r#"{"qubits": 1, "matrix": [[[1,0],[0,0]],[[0,0],[2,0]]]}"#;
        match goal_from_json(json) {
            Err(Error::NotUnitary { deviation, .. }) => assert!((deviation - 3.0).abs() < 1e-12),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn goal_file_rejects_non_power_of_two() {
        let row = "[[1,0],[0,0],[0,0]]";
        let json = format!(r#"{{"qubits": 2, "matrix": [{row},{row},{row}]}}"#);
        assert!(matches!(goal_from_json(&json), Err(Error::NotPowerOfTwo(3))));
    }

    #[test]
    fn identity_goal_sizes() {
        assert_eq!(builtin_with_qubits("identity", 3).unwrap().qubits(), 3);
        assert!(builtin_with_qubits("identity", 0).is_err());
    }
}
