//! Exhaustive minimal-cost search, used to verify optimal-cost claims.
//!
//! All sequences of up to `max_gates` non-wire cases are enumerated depth
//! first, sharing prefix products. The wire is skipped since it changes
//! neither the unitary nor the cost. With pruning enabled, any prefix whose
//! cost already exceeds the best known solution is cut.
//!
//! Ties on cost go to the lexicographically smallest sequence of case
//! indices, so the result does not depend on how subtrees are scheduled.

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::Circuit;
use crate::error::{Error, Result};
use crate::eval::{correctness, GoalSpec};
use crate::gates::{enumerate_cases, placement_cost, CostModel, GateSet, Placement};
use crate::kron::{apply_structured_with, StructuredOperator};
use crate::linalg::{Matrix, MulCounter};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub eps: f64,
    /// Maximum number of circuits the search may examine.
    pub budget: u128,
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            eps: 1e-6,
            budget: DEFAULT_BUDGET,
            prune: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub min_cost: Option<u32>,
    pub witness: Option<Circuit>,
    pub circuits_examined: u64,
    pub max_gates: usize,
}

/// JSON form of a [`SearchReport`].
#[derive(Debug, Clone, Serialize)]
pub struct SearchReportFile {
    pub min_cost: Option<u32>,
    pub witness: Option<Vec<String>>,
    pub circuits_examined: u64,
    pub max_gates: usize,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        let file = SearchReportFile {
            min_cost: self.min_cost,
            witness: self
                .witness
                .as_ref()
                .map(|c| c.placements.iter().map(|p| p.to_string()).collect()),
            circuits_examined: self.circuits_examined,
            max_gates: self.max_gates,
        };
        serde_json::to_string_pretty(&file).expect("report serializes")
    }
}

/// `Σ_{d=0}^{max_gates} branching^d`, saturating.
pub fn sequence_count(branching: usize, max_gates: usize) -> u128 {
    let b = branching as u128;
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_gates {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(b);
    }
    total
}

#[derive(Debug, Clone)]
struct Best {
    cost: u32,
    seq: Vec<usize>,
}

impl Best {
    fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if (b.cost, &b.seq) < (a.cost, &a.seq) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        }
    }
}

struct Searcher<'a> {
    goal: &'a GoalSpec,
    ops: &'a [StructuredOperator],
    costs: &'a [u32],
    max_gates: usize,
    threshold: f64,
    prune: bool,
    examined: u64,
    best: Option<Best>,
    seq: Vec<usize>,
}

impl Searcher<'_> {
    fn visit(&mut self, lambda: &Matrix, cost: u32) -> Result<()> {
        self.examined += 1;
        let improves = self.best.as_ref().is_none_or(|b| cost < b.cost);
        if improves && correctness(lambda, self.goal)? >= self.threshold {
            self.best = Some(Best {
                cost,
                seq: self.seq.clone(),
            });
        }
        if self.seq.len() == self.max_gates {
            return Ok(());
        }
        for (i, op) in self.ops.iter().enumerate() {
            let next_cost = cost + self.costs[i];
            if self.prune && self.best.as_ref().is_some_and(|b| next_cost > b.cost) {
                continue;
            }
            let next = apply_structured_with(op, lambda, &mut MulCounter::new(), true)?;
            self.seq.push(i);
            self.visit(&next, next_cost)?;
            self.seq.pop();
        }
        Ok(())
    }
}

pub fn min_cost_search(
    goal: &GoalSpec,
    max_gates: usize,
    gs: &GateSet,
    cm: &CostModel,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let m = goal.qubits();
    let gates: Vec<Placement> = enumerate_cases(m, gs)
        .into_iter()
        .filter(|p| !p.is_wire())
        .collect();
    let required = sequence_count(gates.len(), max_gates);
    if required > opts.budget {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let ops = gates
        .iter()
        .map(|p| Ok(p.operator(m)?.expect("non-wire")))
        .collect::<Result<Vec<_>>>()?;
    let costs: Vec<u32> = gates.iter().map(|p| placement_cost(p, cm)).collect();
    let threshold = 1.0 - opts.eps;
    let identity = Matrix::identity(1 << m);

    let searcher = |seq: Vec<usize>| Searcher {
        goal,
        ops: &ops,
        costs: &costs,
        max_gates,
        threshold,
        prune: opts.prune,
        examined: 0,
        best: None,
        seq,
    };

    // The empty circuit, then one independent subtree per first gate.
    let mut root = searcher(Vec::new());
    root.examined = 1;
    if correctness(&identity, goal)? >= threshold {
        root.best = Some(Best {
            cost: 0,
            seq: Vec::new(),
        });
    }
    let root_best = root.best.clone();

    let subtrees: Vec<(u64, Option<Best>)> = if max_gates == 0 {
        Vec::new()
    } else {
        (0..ops.len())
            .into_par_iter()
            .map(|i| {
                let mut s = searcher(vec![i]);
                s.best = root_best.clone();
                if opts.prune && s.best.as_ref().is_some_and(|b| costs[i] > b.cost) {
                    return Ok((0, s.best));
                }
                let first = apply_structured_with(&ops[i], &identity, &mut MulCounter::new(), true)?;
                s.visit(&first, costs[i])?;
                Ok((s.examined, s.best))
            })
            .collect::<Result<Vec<_>>>()?
    };

    let mut examined = root.examined;
    let mut best = root_best;
    for (n, b) in subtrees {
        examined += n;
        best = Best::better(best, b);
    }

    let witness = best.as_ref().map(|b| Circuit {
        qubits: m,
        placements: b.seq.iter().map(|&i| gates[i].clone()).collect(),
    });
    Ok(SearchReport {
        min_cost: best.map(|b| b.cost),
        witness,
        circuits_examined: examined,
        max_gates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::GateKind;
    use crate::targets::builtin_with_qubits;

    #[test]
    fn sequence_counts() {
        assert_eq!(sequence_count(8, 0), 1);
        assert_eq!(sequence_count(8, 2), 1 + 8 + 64);
        assert_eq!(sequence_count(usize::MAX, 10), u128::MAX);
    }

    #[test]
    fn identity_costs_nothing() {
        let goal = builtin_with_qubits("identity", 2).unwrap();
        let r = min_cost_search(
            &goal,
            2,
            &GateSet::default(),
            &CostModel::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(r.min_cost, Some(0));
        assert!(r.witness.unwrap().placements.is_empty());
    }

    #[test]
    fn budget_checked_up_front() {
        let goal = builtin_with_qubits("identity", 2).unwrap();
        let opts = SearchOptions {
            budget: 72,
            ..SearchOptions::default()
        };
        let r = min_cost_search(&goal, 2, &GateSet::default(), &CostModel::default(), &opts);
        assert!(matches!(
            r,
            Err(Error::BudgetExceeded {
                required: 73,
                budget: 72
            })
        ));
    }

    #[test]
    fn unpruned_count_is_exhaustive() {
        let goal = builtin_with_qubits("entangle2", 2).unwrap();
        let opts = SearchOptions {
            prune: false,
            ..SearchOptions::default()
        };
        let r = min_cost_search(&goal, 3, &GateSet::default(), &CostModel::default(), &opts)
            .unwrap();
        assert_eq!(r.circuits_examined as u128, sequence_count(8, 3));
        assert_eq!(r.min_cost, Some(3));
        let w = r.witness.unwrap();
        assert_eq!(
            w.placements,
            vec![
                Placement::new(GateKind::H, 0),
                Placement::new(GateKind::CnotDown, 0)
            ]
        );
    }

    #[test]
    fn no_solution_within_depth() {
        let goal = builtin_with_qubits("swap", 2).unwrap();
        let r = min_cost_search(
            &goal,
            2,
            &GateSet::default(),
            &CostModel::default(),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(r.min_cost, None);
        assert!(r.witness.is_none());
        assert!(r.to_json().contains("\"min_cost\": null"));
    }
}
