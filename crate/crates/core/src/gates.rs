//! Primitive gates, the adjacent-only case enumeration and the cost model.
//!
//! Qubit 0 is the top wire and the most significant tensor factor. A
//! placement at `top` on `m` qubits is embedded as
//! `1_{2^top} ⊗ A ⊗ 1_{2^(m - top - span)}`.
//!
//! Case indices on `m` qubits are laid out as:
//!
//! * `0`: the wire
//! * one-qubit gates, gate-major then qubit-minor (`S@0, S@1, …, T@0, …`)
//! * per adjacent pair `p = 0..m-1`, per two-qubit family: the downward
//!   orientation (control/first operand on the top wire), then the upward one.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kron::StructuredOperator;
use crate::linalg::{is_unitary, mat_mul, Complex, Matrix};

/// A user-supplied gate loaded from a gate-set extension file.
#[derive(Debug, Clone, PartialEq)]
pub struct CustomGate {
    pub name: String,
    pub arity: usize,
    pub cost: u32,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Wire,
    S,
    T,
    H,
    /// CNOT controlled by the upper wire.
    CnotDown,
    /// CNOT controlled by the lower wire (`CNOT2`).
    CnotUp,
    /// `reversed` swaps the two wires of a two-qubit custom gate.
    Custom { gate: Arc<CustomGate>, reversed: bool },
}

impl GateKind {
    /// Number of qubits touched; `None` for the wire, which spans the register.
    pub fn arity(&self) -> Option<usize> {
        match self {
            GateKind::Wire => None,
            GateKind::S | GateKind::T | GateKind::H => Some(1),
            GateKind::CnotDown | GateKind::CnotUp => Some(2),
            GateKind::Custom { gate, .. } => Some(gate.arity),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GateKind::Wire => "wire".into(),
            GateKind::S => "S".into(),
            GateKind::T => "T".into(),
            GateKind::H => "H".into(),
            GateKind::CnotDown => "CNOT".into(),
            GateKind::CnotUp => "CNOT2".into(),
            GateKind::Custom { gate, reversed: false } => gate.name.clone(),
            GateKind::Custom { gate, reversed: true } => format!("{}_up", gate.name),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn swap_matrix() -> Matrix {
    Matrix::from_real(
        4,
        &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.],
    )
    .expect("static matrix")
}

/// Matrix of a gate. The wire has none.
pub fn gate_matrix(kind: &GateKind) -> Result<Matrix> {
    let one = Complex::new(1.0, 0.0);
    let m = match kind {
        GateKind::Wire => return Err(Error::WireHasNoMatrix),
        GateKind::S => Matrix::diag(&[one, Complex::new(0.0, 1.0)]),
        GateKind::T => Matrix::diag(&[one, Complex::from_polar(1.0, FRAC_PI_4)]),
        GateKind::H => {
            let h = FRAC_1_SQRT_2;
            Matrix::from_real(2, &[h, h, h, -h])?
        }
        GateKind::CnotDown => Matrix::from_real(
            4,
            &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.],
        )?,
        GateKind::CnotUp => Matrix::from_real(
            4,
            &[1., 0., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 1., 0., 0.],
        )?,
        GateKind::Custom { gate, reversed: false } => gate.matrix.clone(),
        GateKind::Custom { gate, reversed: true } => {
            let swap = swap_matrix();
            mat_mul(&mat_mul(&swap, &gate.matrix)?, &swap)?
        }
    };
    Ok(m)
}

/// A two-qubit gate family; each family yields both orientations.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoQubitFamily {
    Cnot,
    Custom(Arc<CustomGate>),
}

impl TwoQubitFamily {
    pub fn down(&self) -> GateKind {
        match self {
            TwoQubitFamily::Cnot => GateKind::CnotDown,
            TwoQubitFamily::Custom(g) => GateKind::Custom {
                gate: g.clone(),
                reversed: false,
            },
        }
    }

    pub fn up(&self) -> GateKind {
        match self {
            TwoQubitFamily::Cnot => GateKind::CnotUp,
            TwoQubitFamily::Custom(g) => GateKind::Custom {
                gate: g.clone(),
                reversed: true,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateSet {
    one_qubit: Vec<GateKind>,
    two_qubit: Vec<TwoQubitFamily>,
}

impl Default for GateSet {
    /// `{S, T, H | CNOT}`.
    fn default() -> Self {
        Self {
            one_qubit: vec![GateKind::S, GateKind::T, GateKind::H],
            two_qubit: vec![TwoQubitFamily::Cnot],
        }
    }
}

impl GateSet {
    pub fn new(one_qubit: Vec<GateKind>, two_qubit: Vec<TwoQubitFamily>) -> Result<Self> {
        if one_qubit.is_empty() && two_qubit.is_empty() {
            return Err(Error::Config("gate set is empty".into()));
        }
        if let Some(bad) = one_qubit.iter().find(|g| g.arity() != Some(1)) {
            return Err(Error::Config(format!("{bad} is not a one-qubit gate")));
        }
        Ok(Self {
            one_qubit,
            two_qubit,
        })
    }

    pub fn one_qubit(&self) -> &[GateKind] {
        &self.one_qubit
    }

    pub fn two_qubit(&self) -> &[TwoQubitFamily] {
        &self.two_qubit
    }

    /// Resolves a gate by the name produced by [`GateKind::name`].
    pub fn kind_by_name(&self, name: &str) -> Result<GateKind> {
        if name == "wire" {
            return Ok(GateKind::Wire);
        }
        self.one_qubit
            .iter()
            .cloned()
            .chain(self.two_qubit.iter().flat_map(|f| [f.down(), f.up()]))
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::UnknownGate(name.to_string()))
    }

    /// Appends the gates of an extension file (see [`GateFileEntry`]).
    pub fn extend_from_json(&mut self, json: &str) -> Result<()> {
        let entries: Vec<GateFileEntry> = serde_json::from_str(json)?;
        for entry in entries {
            let gate = entry.into_gate()?;
            if self.kind_by_name(&gate.name).is_ok()
                || self.kind_by_name(&format!("{}_up", gate.name)).is_ok()
            {
                return Err(Error::Config(format!("duplicate gate name `{}`", gate.name)));
            }
            let gate = Arc::new(gate);
            if gate.arity == 1 {
                self.one_qubit.push(GateKind::Custom {
                    gate,
                    reversed: false,
                });
            } else {
                self.two_qubit.push(TwoQubitFamily::Custom(gate));
            }
        }
        Ok(())
    }

    pub fn extend_from_file(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.extend_from_json(&text)
    }
}

/// One entry of a gate-set extension file. `matrix` lists the `4^arity`
/// entries row-major as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateFileEntry {
    pub name: String,
    pub arity: usize,
    pub cost: u32,
    pub matrix: Vec<[f64; 2]>,
}

impl GateFileEntry {
    fn into_gate(self) -> Result<CustomGate> {
        if !(1..=2).contains(&self.arity) {
            return Err(Error::Config(format!(
                "gate `{}`: arity must be 1 or 2, got {}",
                self.name, self.arity
            )));
        }
        if self.name.is_empty() || self.name == "wire" {
            return Err(Error::Config(format!("invalid gate name `{}`", self.name)));
        }
        let dim = 1 << self.arity;
        let data = self
            .matrix
            .iter()
            .map(|&[re, im]| Complex::new(re, im))
            .collect();
        let matrix = Matrix::from_vec(dim, data)?;
        let deviation = crate::linalg::unitarity_deviation(&matrix);
        if deviation > 1e-10 {
            return Err(Error::NotUnitary {
                deviation,
                tol: 1e-10,
            });
        }
        debug_assert!(is_unitary(&matrix, 1e-10));
        Ok(CustomGate {
            name: self.name,
            arity: self.arity,
            cost: self.cost,
            matrix,
        })
    }
}

/// One decoded case: a gate at a position.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub kind: GateKind,
    /// Topmost qubit the gate touches.
    pub top: usize,
}

impl Placement {
    pub fn wire() -> Self {
        Self {
            kind: GateKind::Wire,
            top: 0,
        }
    }

    pub fn new(kind: GateKind, top: usize) -> Self {
        Self { kind, top }
    }

    pub fn is_wire(&self) -> bool {
        self.kind == GateKind::Wire
    }

    pub fn span(&self, m: usize) -> usize {
        self.kind.arity().unwrap_or(m)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let ok = match self.kind {
            GateKind::Wire => self.top == 0,
            _ => self.top + self.span(m) <= m,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPlacement(self.to_string(), m))
        }
    }

    /// The structured operator `1_{2^top} ⊗ A ⊗ 1_{2^below}`; `None` for the
    /// wire.
    pub fn operator(&self, m: usize) -> Result<Option<StructuredOperator>> {
        if self.is_wire() {
            return Ok(None);
        }
        self.validate(m)?;
        let below = m - self.top - self.span(m);
        StructuredOperator::new(1 << self.top, gate_matrix(&self.kind)?, 1 << below).map(Some)
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind.arity() {
            None => write!(f, "wire"),
            Some(1) => write!(f, "{}@{}", self.kind, self.top),
            Some(_) => write!(f, "{}@({},{})", self.kind, self.top, self.top + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostModel {
    pub one_qubit_cost: u32,
    pub two_qubit_cost: u32,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            one_qubit_cost: 1,
            two_qubit_cost: 2,
        }
    }
}

/// Wire costs nothing; custom gates carry their own cost.
pub fn placement_cost(p: &Placement, cm: &CostModel) -> u32 {
    match &p.kind {
        GateKind::Wire => 0,
        GateKind::Custom { gate, .. } => gate.cost,
        GateKind::S | GateKind::T | GateKind::H => cm.one_qubit_cost,
        GateKind::CnotDown | GateKind::CnotUp => cm.two_qubit_cost,
    }
}

/// `n1·m + 2·n2·(m−1) + 1`.
pub fn case_count(m: usize, gs: &GateSet) -> usize {
    assert!(m >= 1, "register needs at least one qubit");
    gs.one_qubit.len() * m + 2 * gs.two_qubit.len() * (m - 1) + 1
}

pub fn case_from_index(idx: usize, m: usize, gs: &GateSet) -> Result<Placement> {
    let count = case_count(m, gs);
    if idx >= count {
        return Err(Error::CaseOutOfRange { idx, count });
    }
    if idx == 0 {
        return Ok(Placement::wire());
    }
    let rest = idx - 1;
    let singles = gs.one_qubit.len() * m;
    if rest < singles {
        return Ok(Placement::new(gs.one_qubit[rest / m].clone(), rest % m));
    }
    let rest = rest - singles;
    let per_pair = 2 * gs.two_qubit.len();
    let pair = rest / per_pair;
    let family = &gs.two_qubit[(rest % per_pair) / 2];
    let kind = if rest.is_multiple_of(2) {
        family.down()
    } else {
        family.up()
    };
    Ok(Placement::new(kind, pair))
}

/// All cases on `m` qubits in index order.
pub fn enumerate_cases(m: usize, gs: &GateSet) -> Vec<Placement> {
    (0..case_count(m, gs))
        .map(|i| case_from_index(i, m, gs).expect("index in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, unitarity_deviation};

    #[test]
    fn case_count_examples() {
        let gs = GateSet::default();
        assert_eq!(case_count(2, &gs), 9);
        assert_eq!(case_count(3, &gs), 14);
        assert_eq!(case_count(1, &gs), 4);
    }

    #[test]
    fn case_from_index_examples() {
        let gs = GateSet::default();
        assert_eq!(case_from_index(0, 2, &gs).unwrap(), Placement::wire());
        assert_eq!(
            case_from_index(1, 2, &gs).unwrap(),
            Placement::new(GateKind::S, 0)
        );
        assert_eq!(
            case_from_index(8, 2, &gs).unwrap(),
            Placement::new(GateKind::CnotUp, 0)
        );
        assert!(matches!(
            case_from_index(9, 2, &gs),
            Err(Error::CaseOutOfRange { idx: 9, count: 9 })
        ));
    }

    #[test]
    fn canonical_order_on_three_qubits() {
        let names: Vec<String> = enumerate_cases(3, &GateSet::default())
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            names,
            [
                "wire", "S@0", "S@1", "S@2", "T@0", "T@1", "T@2", "H@0", "H@1", "H@2",
                "CNOT@(0,1)", "CNOT2@(0,1)", "CNOT@(1,2)", "CNOT2@(1,2)"
            ]
        );
    }

    #[test]
    fn gate_relations() {
        let s = gate_matrix(&GateKind::S).unwrap();
        let t = gate_matrix(&GateKind::T).unwrap();
        let z = Matrix::from_real(2, &[1., 0., 0., -1.]).unwrap();
        assert!(mat_mul(&s, &s).unwrap().max_abs_diff(&z).unwrap() <= 1e-15);
        assert!(mat_mul(&t, &t).unwrap().max_abs_diff(&s).unwrap() <= 1e-14);

        let h = gate_matrix(&GateKind::H).unwrap();
        let hh = kron(&h, &h).unwrap();
        let down = gate_matrix(&GateKind::CnotDown).unwrap();
        let up = gate_matrix(&GateKind::CnotUp).unwrap();
        let conj = mat_mul(&mat_mul(&hh, &down).unwrap(), &hh).unwrap();
        assert!(conj.max_abs_diff(&up).unwrap() <= 1e-12);
    }

    #[test]
    fn gate_matrices_are_unitary() {
        for k in [
            GateKind::S,
            GateKind::T,
            GateKind::H,
            GateKind::CnotDown,
            GateKind::CnotUp,
        ] {
            assert!(unitarity_deviation(&gate_matrix(&k).unwrap()) <= 1e-14, "{k}");
        }
        assert!(matches!(
            gate_matrix(&GateKind::Wire),
            Err(Error::WireHasNoMatrix)
        ));
    }

    #[test]
    fn costs() {
        let cm = CostModel::default();
        assert_eq!(placement_cost(&Placement::wire(), &cm), 0);
        assert_eq!(placement_cost(&Placement::new(GateKind::H, 1), &cm), 1);
        assert_eq!(placement_cost(&Placement::new(GateKind::CnotDown, 0), &cm), 2);
    }

    #[test]
    fn placement_validation() {
        assert!(Placement::new(GateKind::CnotDown, 1).validate(2).is_err());
        assert!(Placement::new(GateKind::H, 1).validate(2).is_ok());
        assert!(Placement::new(GateKind::Wire, 1).validate(2).is_err());
    }

    #[test]
    fn extension_file() {
        let mut gs = GateSet::default();
        let json = r#"[
            {"name": "X", "arity": 1, "cost": 1, "matrix": [[0,0],[1,0],[1,0],[0,0]]},
            {"name": "CZ", "arity": 2, "cost": 3,
             "matrix": [[1,0],[0,0],[0,0],[0,0], [0,0],[1,0],[0,0],[0,0],
                        [0,0],[0,0],[1,0],[0,0], [0,0],[0,0],[0,0],[-1,0]]}
        ]"#;
        gs.extend_from_json(json).unwrap();
        assert_eq!(case_count(2, &gs), 4 * 2 + 2 * 2 + 1);
        let x = gs.kind_by_name("X").unwrap();
        assert_eq!(placement_cost(&Placement::new(x, 0), &CostModel::default()), 1);
        let cz_up = gs.kind_by_name("CZ_up").unwrap();
        // CZ is symmetric under wire exchange
        assert_eq!(
            gate_matrix(&cz_up).unwrap(),
            gate_matrix(&gs.kind_by_name("CZ").unwrap()).unwrap()
        );
        assert!(gs.extend_from_json(json).is_err(), "duplicate names");
    }

    #[test]
    fn extension_rejects_non_unitary() {
        let mut gs = GateSet::default();
        let json = r#"[{"name": "B", "arity": 1, "cost": 1, "matrix": [[1,0],[0,0],[0,0],[2,0]]}]"#;
        assert!(matches!(
            gs.extend_from_json(json),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn custom_reversal_matches_cnot_convention() {
        let mut gs = GateSet::new(vec![GateKind::H], vec![]).unwrap();
        let json = r#"[{"name": "CX", "arity": 2, "cost": 2,
            "matrix": [[1,0],[0,0],[0,0],[0,0], [0,0],[1,0],[0,0],[0,0],
                       [0,0],[0,0],[0,0],[1,0], [0,0],[0,0],[1,0],[0,0]]}]"#;
        gs.extend_from_json(json).unwrap();
        let up = gate_matrix(&gs.kind_by_name("CX_up").unwrap()).unwrap();
        assert_eq!(up, gate_matrix(&GateKind::CnotUp).unwrap());
    }
}
