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

//! State-vector simulation of circuits and schedules.

mod execute;
mod qca;
mod state;
mod verify;

pub use execute::{
    execute_observed, execute_schedule, Execution, ExecutionError, ExecutionReport, PhaseEvent,
    BASIS_TOLERANCE,
};
pub use qca::qca_chain_step;
pub use state::{fidelity, StateDump, StateError, StateVector, NORM_TOLERANCE, PARALLEL_THRESHOLD};
pub use verify::{
    simulate_circuit, trial_state, verify_equivalence, verify_with, Verification, FIDELITY_THRESHOLD,
};
