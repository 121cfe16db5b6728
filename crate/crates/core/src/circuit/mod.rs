// Copyright 2026 The qcagrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of one-qubit gates and controlled
//! two-qubit gates. Every two-qubit gate is described by the 2×2 unitary it
//! applies to its target when the control is |1⟩, so a single [`Matrix2`]
//! describes every gate the architecture can broadcast.

mod format;
mod matrix;
pub mod random;

pub use format::{parse_circuit, serialize_circuit};
pub use matrix::{Matrix2, GATE_TOLERANCE};

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// Index of a logical qubit in a circuit register.
pub type QubitId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("malformed circuit file: {0}")]
    Syntax(String),
    #[error("circuit must have at least one qubit")]
    EmptyRegister,
    #[error("gate {gate}: qubit {qubit} out of range for a {qubits}-qubit register")]
    QubitOutOfRange {
        gate: usize,
        qubit: QubitId,
        qubits: usize,
    },
    #[error("gate {gate}: control and target are both qubit {qubit}")]
    ControlIsTarget { gate: usize, qubit: QubitId },
    #[error("gate {gate}: {name} needs a control qubit")]
    MissingControl { gate: usize, name: String },
    #[error("gate {gate}: {name} takes no control qubit")]
    UnexpectedControl { gate: usize, name: String },
    #[error("gate {gate}: {name} requires field `{field}`")]
    MissingField {
        gate: usize,
        name: String,
        field: &'static str,
    },
    #[error("gate {gate}: unknown gate name `{name}`")]
    UnknownGate { gate: usize, name: String },
    #[error("gate {gate}: matrix is not unitary (max |U†U - I| entry = {deviation:e})")]
    NonUnitary { gate: usize, deviation: f64 },
    #[error("gate arity must be 1 or 2, got {0}")]
    BadArity(u8),
}

/// Where a [`GateSpec`] came from; drives the circuit-file name on output.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    Cnot,
    Cz,
    /// Controlled phase `diag(1, e^{iθ})` on the target.
    Cp(f64),
    /// Explicit matrix, `U` for one qubit and `CU` for two.
    Custom,
}

/// A gate type: its arity and the 2×2 unitary it applies to the target.
///
/// For arity 2 the full action is the controlled extension
/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`. Two specs are equal when their arities match
/// and their matrices agree entrywise within [`GATE_TOLERANCE`]; labels are
/// cosmetic.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "format::GateRecord", into = "format::GateRecord")]
pub struct GateSpec {
    kind: GateKind,
    label: String,
    arity: u8,
    unitary: Matrix2,
}

impl PartialEq for GateSpec {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.unitary.approx_eq(&other.unitary, GATE_TOLERANCE)
    }
}

impl GateSpec {
    fn builtin(kind: GateKind, label: &str, arity: u8, unitary: Matrix2) -> Self {
        GateSpec {
            kind,
            label: label.to_string(),
            arity,
            unitary,
        }
    }

    pub fn h() -> Self {
        Self::builtin(GateKind::H, "H", 1, Matrix2::hadamard())
    }

    pub fn x() -> Self {
        Self::builtin(GateKind::X, "X", 1, Matrix2::pauli_x())
    }

    pub fn y() -> Self {
        Self::builtin(GateKind::Y, "Y", 1, Matrix2::pauli_y())
    }

    pub fn z() -> Self {
        Self::builtin(GateKind::Z, "Z", 1, Matrix2::pauli_z())
    }

    pub fn s() -> Self {
        Self::builtin(GateKind::S, "S", 1, Matrix2::phase(PI / 2.0))
    }

    /// The π/8 gate.
    pub fn t() -> Self {
        Self::builtin(GateKind::T, "T", 1, Matrix2::phase(PI / 4.0))
    }

    pub fn cnot() -> Self {
        Self::builtin(GateKind::Cnot, "CNOT", 2, Matrix2::pauli_x())
    }

    pub fn cz() -> Self {
        Self::builtin(GateKind::Cz, "CZ", 2, Matrix2::pauli_z())
    }

    /// Controlled phase with angle `angle` (radians).
    pub fn cp(angle: f64) -> Self {
        GateSpec {
            kind: GateKind::Cp(angle),
            label: format!("CP({angle:.6})"),
            arity: 2,
            unitary: Matrix2::phase(angle),
        }
    }

    /// The QFT rotation `R_j = diag(1, e^{2πi/2^j})` as a controlled gate.
    pub fn qft_rotation(j: u32) -> Self {
        let mut gate = Self::cp(2.0 * PI / 2f64.powi(j as i32));
        gate.label = format!("R{j}");
        gate
    }

    /// A gate with an explicit matrix, rejected unless `U†U = I` within
    /// [`GATE_TOLERANCE`].
    pub fn custom(arity: u8, unitary: Matrix2) -> Result<Self, CircuitError> {
        let label = match arity {
            1 => "U",
            2 => "CU",
            other => return Err(CircuitError::BadArity(other)),
        };
        Self::labelled(label, arity, unitary)
    }

    /// Like [`GateSpec::custom`] with a caller-chosen label.
    pub fn labelled(label: &str, arity: u8, unitary: Matrix2) -> Result<Self, CircuitError> {
        if !(1..=2).contains(&arity) {
            return Err(CircuitError::BadArity(arity));
        }
        let deviation = unitary.unitarity_deviation();
        if deviation > GATE_TOLERANCE {
            return Err(CircuitError::NonUnitary { gate: 0, deviation });
        }
        Ok(GateSpec {
            kind: GateKind::Custom,
            label: label.to_string(),
            arity,
            unitary,
        })
    }

    /// The controlled form broadcast by the grid: one-qubit gates become
    /// controlled-U, two-qubit gates are returned unchanged.
    pub fn controlled(&self) -> Self {
        if self.arity == 2 {
            return self.clone();
        }
        GateSpec {
            kind: GateKind::Custom,
            label: format!("C{}", self.label),
            arity: 2,
            unitary: self.unitary,
        }
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn unitary(&self) -> &Matrix2 {
        &self.unitary
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// One use of a gate in a circuit. `control` is present iff the gate has
/// arity 2.
#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    pub gate: GateSpec,
    pub target: QubitId,
    pub control: Option<QubitId>,
}

impl GateApplication {
    pub fn single(gate: GateSpec, target: QubitId) -> Self {
        GateApplication {
            gate,
            target,
            control: None,
        }
    }

    pub fn controlled(gate: GateSpec, control: QubitId, target: QubitId) -> Self {
        GateApplication {
            gate,
            target,
            control: Some(control),
        }
    }

    /// Qubits touched, control first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        self.control.into_iter().chain(std::iter::once(self.target))
    }

    fn validate(&self, index: usize, qubits: usize) -> Result<(), CircuitError> {
        let name = self.gate.label().to_string();
        match (self.gate.arity(), self.control) {
            (1, Some(_)) => return Err(CircuitError::UnexpectedControl { gate: index, name }),
            (2, None) => return Err(CircuitError::MissingControl { gate: index, name }),
            _ => {}
        }
        for qubit in self.qubits() {
            if qubit >= qubits {
                return Err(CircuitError::QubitOutOfRange {
                    gate: index,
                    qubit,
                    qubits,
                });
            }
        }
        if self.control == Some(self.target) {
            return Err(CircuitError::ControlIsTarget {
                gate: index,
                qubit: self.target,
            });
        }
        Ok(())
    }
}

/// An ordered gate list over `qubits` logical qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<GateApplication>,
}

impl Circuit {
    pub fn new(qubits: usize, gates: Vec<GateApplication>) -> Result<Self, CircuitError> {
        if qubits == 0 {
            return Err(CircuitError::EmptyRegister);
        }
        for (index, gate) in gates.iter().enumerate() {
            gate.validate(index, qubits)?;
        }
        Ok(Circuit { qubits, gates })
    }

    pub fn empty(qubits: usize) -> Result<Self, CircuitError> {
        Self::new(qubits, Vec::new())
    }

    pub fn push(&mut self, gate: GateApplication) -> Result<(), CircuitError> {
        gate.validate(self.gates.len(), self.qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Identical gates on pairwise disjoint qubits, executed as one
/// computational step.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedStep {
    gate: GateSpec,
    applications: Vec<GateApplication>,
}

impl ExtendedStep {
    fn open(first: GateApplication) -> Self {
        ExtendedStep {
            gate: first.gate.clone(),
            applications: vec![first],
        }
    }

    fn accepts(&self, next: &GateApplication) -> bool {
        next.gate == self.gate
            && next
                .qubits()
                .all(|q| self.applications.iter().all(|a| a.qubits().all(|p| p != q)))
    }

    pub fn gate(&self) -> &GateSpec {
        &self.gate
    }

    pub fn applications(&self) -> &[GateApplication] {
        &self.applications
    }

    pub fn arity(&self) -> u8 {
        self.gate.arity()
    }
}

/// Groups maximal runs of consecutive equal gates on disjoint qubits.
///
/// Grouping never reorders gates: a run ends at the first gate that differs
/// from the run's gate or shares a qubit with it.
pub fn extend_circuit(circuit: &Circuit) -> Vec<ExtendedStep> {
    let mut steps: Vec<ExtendedStep> = Vec::new();
    for gate in circuit.gates() {
        match steps.last_mut() {
            Some(step) if step.accepts(gate) => step.applications.push(gate.clone()),
            _ => steps.push(ExtendedStep::open(gate.clone())),
        }
    }
    steps
}

/// The QFT on `n` qubits without the final swap network, so the output
/// register holds the transform in bit-reversed order.
///
/// Qubit `n-1` is the most significant input bit. For each qubit `k` from
/// the top down: a Hadamard on `k`, then `R_{k-m+1}` controlled by `k` onto
/// every lower qubit `m`, nearest first.
pub fn qft_circuit(n: usize) -> Result<Circuit, CircuitError> {
    if n == 0 {
        return Err(CircuitError::EmptyRegister);
    }
    let mut gates = Vec::with_capacity(n * (n + 1) / 2);
    for k in (0..n).rev() {
        gates.push(GateApplication::single(GateSpec::h(), k));
        for m in (0..k).rev() {
            let j = (k - m + 1) as u32;
            gates.push(GateApplication::controlled(GateSpec::qft_rotation(j), k, m));
        }
    }
    Circuit::new(n, gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_disjoint_equal_gates() {
        let circuit = Circuit::new(
            3,
            vec![
                GateApplication::single(GateSpec::h(), 0),
                GateApplication::single(GateSpec::h(), 1),
                GateApplication::controlled(GateSpec::cnot(), 0, 2),
            ],
        )
        .unwrap();
        let steps = extend_circuit(&circuit);
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].applications().len(), 2);
        assert_eq!(steps[1].applications().len(), 1);
        assert_eq!(steps[1].gate(), &GateSpec::cnot());
    }

    #[test]
    fn overlapping_equal_gates_stay_apart() {
        let circuit = Circuit::new(
            2,
            vec![
                GateApplication::single(GateSpec::h(), 0),
                GateApplication::single(GateSpec::h(), 0),
                GateApplication::single(GateSpec::h(), 1),
            ],
        )
        .unwrap();
        let sizes: Vec<_> = extend_circuit(&circuit)
            .iter()
            .map(|s| s.applications().len())
            .collect();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn empty_circuit_has_no_steps() {
        assert!(extend_circuit(&Circuit::empty(4).unwrap()).is_empty());
    }

    #[test]
    fn qft_gate_counts() {
        let one = qft_circuit(1).unwrap();
        assert_eq!(one.gates(), &[GateApplication::single(GateSpec::h(), 0)]);
        assert_eq!(qft_circuit(2).unwrap().len(), 3);
        assert_eq!(qft_circuit(5).unwrap().len(), 15);
        assert_eq!(extend_circuit(&qft_circuit(3).unwrap()).len(), 6);
        assert_eq!(qft_circuit(0), Err(CircuitError::EmptyRegister));
    }

    #[test]
    fn qft_ends_with_r2_then_hadamard_on_qubit_zero() {
        let qft = qft_circuit(5).unwrap();
        let tail = &qft.gates()[qft.len() - 2..];
        assert_eq!(tail[0].gate, GateSpec::cp(PI / 2.0));
        assert_eq!((tail[0].control, tail[0].target), (Some(1), 0));
        assert_eq!(tail[1], GateApplication::single(GateSpec::h(), 0));
    }

    #[test]
    fn distinct_qft_angles_compare_unequal() {
        for j in 2..30 {
            assert_ne!(GateSpec::qft_rotation(j), GateSpec::qft_rotation(j + 1), "j={j}");
        }
    }

    #[test]
    fn rejects_bad_applications() {
        let err = Circuit::new(2, vec![GateApplication::controlled(GateSpec::cnot(), 1, 1)]);
        assert_eq!(err, Err(CircuitError::ControlIsTarget { gate: 0, qubit: 1 }));
        let err = Circuit::new(2, vec![GateApplication::single(GateSpec::x(), 2)]);
        assert!(matches!(err, Err(CircuitError::QubitOutOfRange { qubit: 2, .. })));
        let err = Circuit::new(2, vec![GateApplication::single(GateSpec::cz(), 0)]);
        assert!(matches!(err, Err(CircuitError::MissingControl { .. })));
    }

    #[test]
    fn custom_gate_must_be_unitary() {
        let m = Matrix2::from_pairs([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [2.0, 0.0]]]);
        assert!(matches!(
            GateSpec::custom(1, m),
            Err(CircuitError::NonUnitary { .. })
        ));
        assert_eq!(GateSpec::custom(1, Matrix2::hadamard()).unwrap(), GateSpec::h());
    }

    #[test]
    fn controlled_form_keeps_matrix() {
        let ch = GateSpec::h().controlled();
        assert_eq!(ch.arity(), 2);
        assert_eq!(ch.label(), "CH");
        assert!(ch.unitary().approx_eq(&Matrix2::hadamard(), 0.0));
        assert_eq!(GateSpec::cnot().controlled(), GateSpec::cnot());
    }
}
