use oracle_forge::eval::{circuit_unitary, correctness};
use oracle_forge::linalg::unitarity_deviation;
use oracle_forge::targets::{builtin, builtin_with_qubits, load_goal, reference_circuit, save_goal, BUILTIN_GOALS};

#[test]
fn builtin_goals_are_unitary() {
    for name in BUILTIN_GOALS {
        let goal = builtin(name).unwrap();
        assert!(unitarity_deviation(goal.matrix()) <= 1e-14, "{name}");
        assert_eq!(goal.matrix().dim(), 1 << goal.qubits());
    }
}

#[test]
fn reference_circuits_reproduce_goals() {
    for name in ["swap", "entangle2", "entangle3"] {
        let goal = builtin(name).unwrap();
        let c = reference_circuit(name).unwrap();
        let lambda = circuit_unitary(&c).unwrap();
        assert!((correctness(&lambda, &goal).unwrap() - 1.0).abs() <= 1e-12, "{name}");
        assert_eq!(c.cost(&Default::default()), goal.optimal_cost().unwrap(), "{name}");
    }
}

#[test]
fn goal_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_GOALS {
        let goal = builtin(name).unwrap();
        let path = dir.path().join(format!("{name}.json"));
        save_goal(&goal, &path).unwrap();
        let back = load_goal(&path).unwrap();
        assert_eq!(back.qubits(), goal.qubits());
        assert_eq!(back.optimal_cost(), goal.optimal_cost());
        assert!(back.matrix().max_abs_diff(goal.matrix()).unwrap() <= 1e-15);
    }
}

#[test]
fn malformed_goal_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"qubits": 1, "matrix": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}"#).unwrap();
    assert!(load_goal(&path).is_err());
    std::fs::write(&path, r#"{"qubits": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#).unwrap();
    assert!(load_goal(&path).is_err());
    assert!(load_goal(dir.path().join("missing.json")).is_err());
}

#[test]
fn goal_names_are_normalized() {
    assert!(builtin("Controlled-S").is_ok());
    assert_eq!(builtin_with_qubits("identity", 3).unwrap().qubits(), 3);
    let err = builtin("toffoli").unwrap_err().to_string();
    assert!(err.contains("entangle2"), "{err}");
}
