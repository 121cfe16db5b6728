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

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::execute::{execute_observed, ExecutionError, ExecutionReport};
use super::state::{fidelity, StateError, StateVector};
use crate::circuit::Circuit;
use crate::compiler::Schedule;
use crate::exec::Strategy;

/// Fidelity below which a schedule is reported as not equivalent.
pub const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;

/// Applies the circuit gate by gate.
pub fn simulate_circuit(circuit: &Circuit, input: &StateVector) -> Result<StateVector, StateError> {
    let mut state = input.clone();
    for app in circuit.gates() {
        let targets: Vec<_> = app.qubits().collect();
        state.apply_gate(&app.gate, &targets)?;
    }
    Ok(state)
}

/// Random input for trial `trial` of a run seeded with `seed`. Each trial
/// draws from its own ChaCha stream, so results do not depend on the order
/// in which trials run.
pub fn trial_state(qubits: usize, seed: u64, trial: usize) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    StateVector::random(qubits, &mut rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub min_fidelity: f64,
    pub trials: usize,
    /// Execution counters of the trial with the lowest fidelity.
    pub worst: ExecutionReport,
    pub min_ancilla_purity: f64,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.min_fidelity >= FIDELITY_THRESHOLD
    }
}

/// Minimum fidelity between direct simulation of `circuit` and execution of
/// `schedule` over `trials` random inputs.
pub fn verify_equivalence(
    circuit: &Circuit,
    schedule: &Schedule,
    trials: usize,
    seed: u64,
) -> Result<f64, ExecutionError> {
    verify_with(circuit, schedule, trials, seed, Strategy::default()).map(|v| v.min_fidelity)
}

pub fn verify_with(
    circuit: &Circuit,
    schedule: &Schedule,
    trials: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<Verification, ExecutionError> {
    let qubits = circuit.qubits();
    let runs = strategy.map_indices(trials, |trial| {
        let input = trial_state(qubits, seed, trial);
        let direct = simulate_circuit(circuit, &input)
            .map_err(|source| ExecutionError::State { step: 0, source })?;
        let run = execute_observed(schedule, &input, |_| {})?;
        Ok::<_, ExecutionError>((fidelity(&direct, &run.state), run.report))
    });
    let mut verification = Verification {
        min_fidelity: 1.0,
        trials,
        worst: ExecutionReport::default(),
        min_ancilla_purity: 1.0,
    };
    for run in runs {
        let (f, report) = run?;
        verification.min_ancilla_purity = verification.min_ancilla_purity.min(report.min_ancilla_purity);
        if f < verification.min_fidelity {
            verification.min_fidelity = f;
            verification.worst = report;
        }
    }
    Ok(verification)
}
