//! Binary chromosomes and their translation into circuits.
//!
//! A chromosome is `g` codons of `k = ⌈log2 N⌉` bits. Codon `s` (read
//! most-significant bit first) selects case `⌊s·N / 2^k⌋`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{
    case_count, enumerate_cases, placement_cost, CostModel, GateKind, GateSet, Placement,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    /// Parses `0`/`1` characters; whitespace and `_` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!("invalid bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Smallest `k` with `2^k ≥ n`.
pub fn codon_bits(n: usize) -> usize {
    assert!(n >= 1, "case count must be positive");
    n.next_power_of_two().trailing_zeros() as usize
}

/// `⌊s·N / 2^k⌋`.
pub fn decode_codon(s: u64, n: usize, k: usize) -> usize {
    debug_assert!(k >= 64 || s < (1u64 << k));
    ((s as u128 * n as u128) >> k) as usize
}

/// Fixed per-run encoding parameters.
#[derive(Debug, Clone)]
pub struct Encoding {
    qubits: usize,
    gate_set: GateSet,
    max_gates: usize,
    cases: Vec<Placement>,
    codon_bits: usize,
}

impl Encoding {
    pub fn new(qubits: usize, gate_set: GateSet, max_gates: usize) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::Config("need at least one qubit".into()));
        }
        if max_gates == 0 {
            return Err(Error::Config("need at least one gate slot".into()));
        }
        let cases = enumerate_cases(qubits, &gate_set);
        let codon_bits = codon_bits(cases.len());
        if codon_bits > 63 {
            return Err(Error::Config("too many cases for a codon".into()));
        }
        Ok(Self {
            qubits,
            gate_set,
            max_gates,
            cases,
            codon_bits,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gate_set(&self) -> &GateSet {
        &self.gate_set
    }

    pub fn max_gates(&self) -> usize {
        self.max_gates
    }

    pub fn case_count(&self) -> usize {
        debug_assert_eq!(self.cases.len(), case_count(self.qubits, &self.gate_set));
        self.cases.len()
    }

    pub fn codon_bits(&self) -> usize {
        self.codon_bits
    }

    pub fn cases(&self) -> &[Placement] {
        &self.cases
    }

    /// `g · k`.
    pub fn chromosome_len(&self) -> usize {
        self.max_gates * self.codon_bits
    }

    /// Case indices selected by each codon.
    pub fn decode_indices(&self, c: &Chromosome) -> Result<Vec<usize>> {
        let expected = self.chromosome_len();
        if c.len() != expected {
            return Err(Error::ChromosomeLength {
                got: c.len(),
                expected,
            });
        }
        let n = self.case_count();
        Ok(c.bits
            .chunks(self.codon_bits)
            .map(|codon| {
                let s = codon.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
                decode_codon(s, n, self.codon_bits)
            })
            .collect())
    }

    pub fn decode(&self, c: &Chromosome) -> Result<Circuit> {
        let placements = self
            .decode_indices(c)?
            .into_iter()
            .map(|i| self.cases[i].clone())
            .collect();
        Ok(Circuit {
            qubits: self.qubits,
            placements,
        })
    }
}

/// Free-function form of [`Encoding::decode`].
pub fn decode(c: &Chromosome, m: usize, gs: &GateSet) -> Result<Circuit> {
    let k = codon_bits(case_count(m, gs));
    if !c.len().is_multiple_of(k) || c.is_empty() {
        return Err(Error::ChromosomeLength {
            got: c.len(),
            expected: k * (c.len() / k).max(1),
        });
    }
    Encoding::new(m, gs.clone(), c.len() / k)?.decode(c)
}

/// An ordered list of placements on a fixed register, applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub qubits: usize,
    pub placements: Vec<Placement>,
}

impl Circuit {
    pub fn new(qubits: usize, placements: Vec<Placement>) -> Result<Self> {
        for p in &placements {
            p.validate(qubits)?;
        }
        Ok(Self { qubits, placements })
    }

    pub fn empty(qubits: usize) -> Self {
        Self {
            qubits,
            placements: Vec::new(),
        }
    }

    /// Placements other than the wire.
    pub fn gates(&self) -> impl Iterator<Item = &Placement> {
        self.placements.iter().filter(|p| !p.is_wire())
    }

    pub fn cost(&self, cm: &CostModel) -> u32 {
        self.placements.iter().map(|p| placement_cost(p, cm)).sum()
    }

    pub fn to_file(&self, cm: &CostModel) -> CircuitFile {
        CircuitFile {
            qubits: self.qubits,
            gates: self
                .placements
                .iter()
                .map(|p| GateEntry {
                    gate: p.kind.name(),
                    top: p.top,
                })
                .collect(),
            cost: self.cost(cm),
        }
    }

    pub fn to_json(&self, cm: &CostModel) -> String {
        serde_json::to_string_pretty(&self.to_file(cm)).expect("circuit serializes")
    }

    /// Parses the export format, resolving gate names against `gs`. The
    /// stored cost is informational and not trusted.
    pub fn from_json(json: &str, gs: &GateSet) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(json)?;
        file.into_circuit(gs)
    }

    pub fn render_ascii(&self) -> String {
        render_ascii(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateEntry {
    pub gate: String,
    pub top: usize,
}

/// Circuit export format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub qubits: usize,
    pub gates: Vec<GateEntry>,
    /// Written on export; recomputed from the gates on import.
    #[serde(default)]
    pub cost: u32,
}

impl CircuitFile {
    pub fn into_circuit(self, gs: &GateSet) -> Result<Circuit> {
        let placements = self
            .gates
            .into_iter()
            .map(|e| Ok(Placement::new(gs.kind_by_name(&e.gate)?, e.top)))
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(self.qubits, placements)
    }
}

/// One text row per qubit, gates in time order; wire steps are omitted.
pub fn render_ascii(circ: &Circuit) -> String {
    let m = circ.qubits;
    let mut rows: Vec<String> = (0..m).map(|q| format!("q{q}: ─")).collect();
    for p in circ.gates() {
        let mut labels = vec![String::new(); m];
        match &p.kind {
            GateKind::CnotDown => {
                labels[p.top] = "●".into();
                labels[p.top + 1] = "⊕".into();
            }
            GateKind::CnotUp => {
                labels[p.top] = "⊕".into();
                labels[p.top + 1] = "●".into();
            }
            kind => {
                for label in labels.iter_mut().skip(p.top).take(p.span(m)) {
                    *label = kind.name();
                }
            }
        }
        let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        for (row, label) in rows.iter_mut().zip(&labels) {
            let pad = width - label.chars().count();
            row.push('─');
            if label.is_empty() {
                row.extend(std::iter::repeat_n('─', width));
            } else {
                row.push_str(label);
                row.extend(std::iter::repeat_n('─', pad));
            }
            row.push('─');
        }
    }
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push_str("─\n");
    }
    out
}
