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

//! Compile quantum circuits into single-gate-type broadcast schedules on a
//! nearest-neighbour teleportation grid, and check them against direct
//! state-vector simulation.
//!
//! ```
//! use qcagrid::{compile, qft_circuit, verify_equivalence};
//!
//! let circuit = qft_circuit(3).unwrap();
//! let schedule = compile(&circuit).unwrap();
//! let fidelity = verify_equivalence(&circuit, &schedule, 4, 7).unwrap();
//! assert!(fidelity > 1.0 - 1e-9);
//! ```

pub mod circuit;
pub mod cli;
pub mod compiler;
pub mod exec;
pub mod grid;
pub mod placer;
pub mod sim;

pub use circuit::{
    extend_circuit, parse_circuit, qft_circuit, serialize_circuit, Circuit, CircuitError,
    ExtendedStep, GateApplication, GateKind, GateSpec, Matrix2, QubitId,
};
pub use compiler::{compile, CompileError, CostReport, Phase, PhaseKind, Schedule, Step};
pub use exec::Strategy;
pub use grid::{adjacency_check, Basis, GridError, GridLayout, GridPos, GridState, Occupant};
pub use placer::{plan_rearrangement, plan_single_qubit_step, plan_two_qubit_step, PlacementPlan, PlanError};
pub use sim::{
    execute_schedule, fidelity, qca_chain_step, simulate_circuit, verify_equivalence, StateVector,
};
