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

//! One update of the two-qubit-cell QCA chain.
//!
//! Cell `j` holds its s-qubit at index `2j` and its c-qubit at `2j + 1`.
//! The interaction phase applies a CNOT from the c-qubit of cell `j` onto
//! the s-qubit of cell `j + 1` (open boundary); the evaluation phase then
//! applies `U` to every qubit.

use super::state::{StateError, StateVector};
use crate::circuit::{GateSpec, Matrix2};

pub fn qca_chain_step(cells: &StateVector, u: &Matrix2) -> Result<StateVector, StateError> {
    let qubits = cells.qubits();
    if !qubits.is_multiple_of(2) {
        return Err(StateError::OddCellCount(qubits));
    }
    let u = GateSpec::custom(1, *u).map_err(|_| StateError::NotUnitary)?;
    let mut state = cells.clone();
    let cnot = GateSpec::cnot();
    for j in 0..(qubits / 2).saturating_sub(1) {
        state.apply_gate(&cnot, &[2 * j + 1, 2 * j + 2])?;
    }
    for q in 0..qubits {
        state.apply_gate(&u, &[q])?;
    }
    Ok(state)
}
