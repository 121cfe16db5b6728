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

//! JSON circuit files.
//!
//! ```json
//! {"qubits": 3, "gates": [
//!   {"name": "H", "target": 0},
//!   {"name": "CP", "control": 1, "target": 0, "angle": 1.5707963267948966},
//!   {"name": "U", "target": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
//! ]}
//! ```

use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, GateApplication, GateKind, GateSpec, Matrix2, QubitId};

/// Self-contained gate description used inside schedule files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GateRecord {
    label: String,
    arity: u8,
    matrix: [[[f64; 2]; 2]; 2],
}

impl From<GateSpec> for GateRecord {
    fn from(gate: GateSpec) -> Self {
        GateRecord {
            label: gate.label().to_string(),
            arity: gate.arity(),
            matrix: gate.unitary().to_pairs(),
        }
    }
}

impl TryFrom<GateRecord> for GateSpec {
    type Error = CircuitError;

    fn try_from(record: GateRecord) -> Result<Self, Self::Error> {
        GateSpec::labelled(&record.label, record.arity, Matrix2::from_pairs(record.matrix))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitFile {
    qubits: usize,
    gates: Vec<GateEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateEntry {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    control: Option<QubitId>,
    target: QubitId,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<[[[f64; 2]; 2]; 2]>,
}

impl GateEntry {
    fn into_application(self, index: usize) -> Result<GateApplication, CircuitError> {
        let missing = |field| CircuitError::MissingField {
            gate: index,
            name: self.name.clone(),
            field,
        };
        let gate = match self.name.as_str() {
            "H" => GateSpec::h(),
            "X" => GateSpec::x(),
            "Y" => GateSpec::y(),
            "Z" => GateSpec::z(),
            "S" => GateSpec::s(),
            "T" => GateSpec::t(),
            "CNOT" => GateSpec::cnot(),
            "CZ" => GateSpec::cz(),
            "CP" => GateSpec::cp(self.angle.ok_or_else(|| missing("angle"))?),
            "U" | "CU" => {
                let matrix = Matrix2::from_pairs(self.matrix.ok_or_else(|| missing("matrix"))?);
                let arity = if self.name == "U" { 1 } else { 2 };
                GateSpec::custom(arity, matrix).map_err(|err| match err {
                    CircuitError::NonUnitary { deviation, .. } => CircuitError::NonUnitary {
                        gate: index,
                        deviation,
                    },
                    other => other,
                })?
            }
            _ => {
                return Err(CircuitError::UnknownGate {
                    gate: index,
                    name: self.name,
                })
            }
        };
        Ok(GateApplication {
            gate,
            target: self.target,
            control: self.control,
        })
    }

    fn from_application(app: &GateApplication) -> Self {
        let gate = &app.gate;
        let (name, angle, matrix) = match gate.kind() {
            GateKind::H => ("H", None, None),
            GateKind::X => ("X", None, None),
            GateKind::Y => ("Y", None, None),
            GateKind::Z => ("Z", None, None),
            GateKind::S => ("S", None, None),
            GateKind::T => ("T", None, None),
            GateKind::Cnot => ("CNOT", None, None),
            GateKind::Cz => ("CZ", None, None),
            GateKind::Cp(angle) => ("CP", Some(*angle), None),
            GateKind::Custom if gate.arity() == 1 => ("U", None, Some(gate.unitary().to_pairs())),
            GateKind::Custom => ("CU", None, Some(gate.unitary().to_pairs())),
        };
        GateEntry {
            name: name.to_string(),
            control: app.control,
            target: app.target,
            angle,
            matrix,
        }
    }
}

/// Parses a circuit file. Errors name the offending gate by its position in
/// the `gates` array; syntax errors carry serde's line and column.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let file: CircuitFile =
        serde_json::from_str(text).map_err(|err| CircuitError::Syntax(err.to_string()))?;
    let gates = file
        .gates
        .into_iter()
        .enumerate()
        .map(|(index, entry)| entry.into_application(index))
        .collect::<Result<Vec<_>, _>>()?;
    Circuit::new(file.qubits, gates)
}

pub fn serialize_circuit(circuit: &Circuit) -> String {
    let file = CircuitFile {
        qubits: circuit.qubits(),
        gates: circuit.gates().iter().map(GateEntry::from_application).collect(),
    };
    serde_json::to_string_pretty(&file).expect("circuit files always serialize")
}
