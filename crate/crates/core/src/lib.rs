//! Synthesis of quantum oracles (reversible unitaries) from adjacent one- and
//! two-qubit gates with a hybrid quantum-inspired evolutionary algorithm.
//!
//! * [`linalg`]: dense complex matrices
//! * [`kron`]: the `1_m ⊗ A ⊗ 1_k` multiplication kernel
//! * [`gates`]: gate catalog, case enumeration, costs
//! * [`codec`]: chromosome ↔ circuit
//! * [`eval`]: circuit unitary, correctness, fitness
//! * [`hqea`]: the evolutionary engine
//! * [`targets`]: benchmark goals and goal files
//! * [`brute`]: exhaustive minimal-cost search

pub mod brute;
pub mod codec;
pub mod error;
pub mod eval;
pub mod gates;
pub mod hqea;
pub mod kron;
pub mod linalg;
pub mod targets;

pub use codec::{Chromosome, Circuit, Encoding};
pub use error::{Error, Result};
pub use eval::{EvalResult, FitnessParams, GoalSpec};
pub use gates::{CostModel, GateKind, GateSet, Placement};
pub use hqea::{BatchStats, HqeaParams, Problem, RunResult};
pub use linalg::{Complex, Matrix, MulCounter};
