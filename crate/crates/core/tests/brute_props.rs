use oracle_forge::brute::{min_cost_search, sequence_count, SearchOptions};
use oracle_forge::gates::case_count;
use oracle_forge::hqea::run_batch;
use oracle_forge::targets::builtin;
use oracle_forge::{CostModel, Encoding, FitnessParams, GateSet, HqeaParams, Problem};

fn exhaustive() -> SearchOptions {
    SearchOptions { prune: false, ..Default::default() }
}

#[test]
fn unpruned_search_visits_every_sequence() {
    let gs = GateSet::default();
    for (name, depth) in [("entangle2", 2), ("swap", 3), ("entangle3", 2)] {
        let goal = builtin(name).unwrap();
        let n = case_count(goal.qubits(), &gs);
        let r = min_cost_search(&goal, depth, &gs, &CostModel::default(), &exhaustive()).unwrap();
        assert_eq!(r.circuits_examined as u128, sequence_count(n - 1, depth), "{name}");
    }
}

#[test]
fn pruning_does_not_change_the_optimum() {
    let gs = GateSet::default();
    let cm = CostModel::default();
    for name in ["entangle2", "swap", "entangle3"] {
        let goal = builtin(name).unwrap();
        let full = min_cost_search(&goal, 3, &gs, &cm, &exhaustive()).unwrap();
        let fast = min_cost_search(&goal, 3, &gs, &cm, &SearchOptions::default()).unwrap();
        assert_eq!(full.min_cost, fast.min_cost, "{name}");
        assert_eq!(full.witness, fast.witness, "{name}");
        assert!(fast.circuits_examined <= full.circuits_examined);
    }
}

#[test]
fn evolved_costs_never_beat_exhaustive_minimum() {
    let gs = GateSet::default();
    let cm = CostModel::default();
    for (name, satcost, g) in [("entangle2", 6, 6), ("swap", 8, 6)] {
        let goal = builtin(name).unwrap();
        let floor = min_cost_search(&goal, 3, &gs, &cm, &SearchOptions::default())
            .unwrap()
            .min_cost
            .unwrap();
        let enc = Encoding::new(goal.qubits(), gs.clone(), g).unwrap();
        let pr = Problem::new(goal, enc, cm).unwrap();
        let params = HqeaParams {
            fitness: FitnessParams { satcost, ..Default::default() },
            ..Default::default()
        };
        let (_, runs) = run_batch(&pr, &params, 8, 100).unwrap();
        for r in runs.iter().filter(|r| r.success) {
            assert!(r.best.eval.allcost >= floor, "{name}: {}", r.best.eval.allcost);
        }
    }
}

#[test]
fn budget_is_enforced_before_searching() {
    let gs = GateSet::default();
    let goal = builtin("controlled_s").unwrap();
    let opts = SearchOptions { budget: 1000, ..Default::default() };
    assert!(min_cost_search(&goal, 6, &gs, &CostModel::default(), &opts).is_err());
}
