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

//! Schedule execution. Teleports only relabel: data qubit `q` stays at
//! state index `q` wherever it sits on the grid. Prepared qubits enter the
//! state vector when they are teleported out of a pool and leave it at
//! reinitialization.

use std::collections::BTreeMap;

use thiserror::Error;

use super::state::{StateError, StateVector};
use crate::compiler::{Move, Phase, PhaseKind, Schedule};
use crate::grid::{AncillaConfiguration, Basis, GridError, GridPos, GridState, Occupant};

/// Lowest reduced purity, and lowest probability of the prepared bit, that
/// a prepared qubit may show when it is reset.
pub const BASIS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExecutionError {
    #[error("input has {found} qubits, schedule register has {expected}")]
    InputSize { expected: usize, found: usize },
    #[error("step {step}: broadcast pair {control} -> {data} is not adjacent")]
    Adjacency { step: usize, control: GridPos, data: GridPos },
    #[error("step {step}: broadcast cell {pos} holds {occupant:?}")]
    BroadcastCell { step: usize, pos: GridPos, occupant: Occupant },
    #[error("step {step}: {source}")]
    Teleport { step: usize, source: GridError },
    #[error("step {step}: ancilla at {pos} is not a basis state (purity {purity:e}, P(prepared) {probability:e})")]
    AncillaEntangled { step: usize, pos: GridPos, purity: f64, probability: f64 },
    #[error("step {step}: prepared qubits differ from their initial configuration after reinitialization")]
    NotRestored { step: usize },
    #[error("step {step}: {source}")]
    State { step: usize, source: StateError },
}

/// Counters gathered while executing a schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ExecutionReport {
    pub broadcasts: usize,
    pub teleports: usize,
    /// Prepared qubits checked and reset.
    pub ancilla_checks: usize,
    /// Lowest reduced purity seen at a reset; 1 when nothing was reset.
    pub min_ancilla_purity: f64,
    /// Reinitialize phases after which the configuration matched the
    /// initial one.
    pub restorations: usize,
}

impl Default for ExecutionReport {
    fn default() -> Self {
        ExecutionReport {
            broadcasts: 0,
            teleports: 0,
            ancilla_checks: 0,
            min_ancilla_purity: 1.0,
            restorations: 0,
        }
    }
}

/// Snapshot handed to an observer after each phase.
pub struct PhaseEvent<'a> {
    pub step: usize,
    pub phase: &'a Phase,
    pub grid: &'a GridState,
    pub state: &'a StateVector,
}

#[derive(Debug, Clone)]
pub struct Execution {
    pub state: StateVector,
    pub grid: GridState,
    pub report: ExecutionReport,
}

/// Runs `schedule` on `input` and returns the final state and grid.
pub fn execute_schedule(
    schedule: &Schedule,
    input: &StateVector,
) -> Result<(StateVector, GridState), ExecutionError> {
    let run = execute_observed(schedule, input, |_| {})?;
    Ok((run.state, run.grid))
}

/// As [`execute_schedule`], calling `observe` after every phase.
pub fn execute_observed<F>(
    schedule: &Schedule,
    input: &StateVector,
    mut observe: F,
) -> Result<Execution, ExecutionError>
where
    F: FnMut(&PhaseEvent<'_>),
{
    let register = schedule.register();
    if input.qubits() != register {
        return Err(ExecutionError::InputSize {
            expected: register,
            found: input.qubits(),
        });
    }
    let mut machine = Machine {
        state: input.clone(),
        grid: schedule.initial_placement().clone(),
        ancillas: BTreeMap::new(),
        initial: schedule.initial_placement().ancilla_configuration(),
        report: ExecutionReport::default(),
        step: 0,
    };
    for (step, s) in schedule.steps().iter().enumerate() {
        machine.step = step;
        for phase in &s.phases {
            machine.run(phase)?;
            observe(&PhaseEvent {
                step,
                phase,
                grid: &machine.grid,
                state: &machine.state,
            });
        }
    }
    Ok(Execution {
        state: machine.state,
        grid: machine.grid,
        report: machine.report,
    })
}

struct Machine {
    state: StateVector,
    grid: GridState,
    /// State index of each prepared qubit in the ancilla row, by logical
    /// cell. Entries never outlive a step, so orientation changes do not
    /// affect them.
    ancillas: BTreeMap<GridPos, (usize, Basis)>,
    initial: AncillaConfiguration,
    report: ExecutionReport,
    step: usize,
}

impl Machine {
    fn run(&mut self, phase: &Phase) -> Result<(), ExecutionError> {
        match phase {
            Phase::Broadcast { gate, pairs } => self.broadcast(gate, pairs),
            Phase::Reinitialize { cells } => self.reinitialize(cells),
            Phase::Rotate => self
                .grid
                .rotate_in_place()
                .map_err(|source| ExecutionError::Teleport { step: self.step, source }),
            _ => phase.moves().iter().try_for_each(|m| self.teleport(m, phase.kind())),
        }
    }

    fn teleport(&mut self, m: &Move, kind: PhaseKind) -> Result<(), ExecutionError> {
        let step = self.step;
        let source = self
            .grid
            .occupant(m.from)
            .map_err(|source| ExecutionError::Teleport { step, source })?;
        self.grid
            .teleport_in_place(m.from, m.to, kind)
            .map_err(|source| ExecutionError::Teleport { step, source })?;
        self.report.teleports += 1;
        match source {
            Occupant::Pool(b) => {
                let index = self.state.push_qubit(b.bit());
                self.ancillas.insert(m.to, (index, b));
            }
            Occupant::Ancilla(_) => {
                let entry = self.ancillas.remove(&m.from).expect("tracked ancilla");
                self.ancillas.insert(m.to, entry);
            }
            _ => {}
        }
        Ok(())
    }

    fn index_at(&self, pos: GridPos) -> Result<usize, ExecutionError> {
        let occupant = self
            .grid
            .occupant(pos)
            .map_err(|source| ExecutionError::Teleport { step: self.step, source })?;
        match occupant {
            Occupant::Working(q) => Ok(q),
            Occupant::Ancilla(_) => Ok(self.ancillas[&pos].0),
            _ => Err(ExecutionError::BroadcastCell {
                step: self.step,
                pos,
                occupant,
            }),
        }
    }

    fn broadcast(
        &mut self,
        gate: &crate::circuit::GateSpec,
        pairs: &[(GridPos, GridPos)],
    ) -> Result<(), ExecutionError> {
        let step = self.step;
        let mut indices = Vec::with_capacity(pairs.len());
        for &(control, data) in pairs {
            if control.manhattan(&data) != 1 {
                return Err(ExecutionError::Adjacency { step, control, data });
            }
            let data_index = match self.grid.occupant(data) {
                Ok(Occupant::Working(q)) => q,
                Ok(occupant) => return Err(ExecutionError::BroadcastCell { step, pos: data, occupant }),
                Err(source) => return Err(ExecutionError::Teleport { step, source }),
            };
            indices.push((self.index_at(control)?, data_index));
        }
        self.state
            .apply_broadcast(gate, &indices)
            .map_err(|source| ExecutionError::State { step, source })?;
        self.report.broadcasts += 1;
        Ok(())
    }

    fn reinitialize(&mut self, cells: &[GridPos]) -> Result<(), ExecutionError> {
        let step = self.step;
        let state_err = |source| ExecutionError::State { step, source };
        // every live prepared qubit must be a basis state, released or not
        for (&pos, &(index, basis)) in &self.ancillas {
            let purity = self.state.reduced_purity(index).map_err(state_err)?;
            let one = self.state.probability_one(index).map_err(state_err)?;
            let probability = if basis == Basis::One { one } else { 1.0 - one };
            self.report.ancilla_checks += 1;
            self.report.min_ancilla_purity = self.report.min_ancilla_purity.min(purity);
            if purity < 1.0 - BASIS_TOLERANCE || probability < 1.0 - BASIS_TOLERANCE {
                return Err(ExecutionError::AncillaEntangled { step, pos, purity, probability });
            }
        }
        let released = self
            .grid
            .reinitialize(cells)
            .map_err(|source| ExecutionError::Teleport { step, source })?;
        let mut removed: Vec<(usize, Basis)> = released
            .iter()
            .map(|(pos, _)| self.ancillas.remove(pos).expect("tracked ancilla"))
            .collect();
        removed.sort_by_key(|&(index, _)| std::cmp::Reverse(index));
        for (index, basis) in removed {
            self.state.remove_qubit(index, basis.bit()).map_err(state_err)?;
        }
        if !self.ancillas.is_empty() || self.grid.ancilla_configuration() != self.initial {
            return Err(ExecutionError::NotRestored { step });
        }
        self.report.restorations += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{qft_circuit, Circuit, GateApplication, GateSpec};
    use crate::compiler::{compile, Step};
    use crate::grid::GridLayout;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn empty_schedule_returns_input() {
        let schedule = compile(&Circuit::empty(3).unwrap()).unwrap();
        let input = StateVector::basis(3, 5);
        let (out, grid) = execute_schedule(&schedule, &input).unwrap();
        assert_eq!(out, input);
        assert_eq!(&grid, schedule.initial_placement());
    }

    #[test]
    fn x_flips_zero() {
        let circuit = Circuit::new(1, vec![GateApplication::single(GateSpec::x(), 0)]).unwrap();
        let (out, _) = execute_schedule(&compile(&circuit).unwrap(), &StateVector::zero(1)).unwrap();
        assert_eq!(out, StateVector::basis(1, 1));
    }

    #[test]
    fn qft3_on_basis_five_matches_dft_column() {
        let schedule = compile(&qft_circuit(3).unwrap()).unwrap();
        let (out, _) = execute_schedule(&schedule, &StateVector::basis(3, 5)).unwrap();
        // output index bits are reversed relative to the DFT
        let rev = |k: usize| ((k & 1) << 2) | (k & 2) | ((k >> 2) & 1);
        for k in 0..8 {
            let expected = Complex64::from_polar(1.0 / 8f64.sqrt(), 2.0 * PI * (5 * k) as f64 / 8.0);
            assert!((out.amplitudes()[rev(k)] - expected).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn teleports_alone_leave_amplitudes_untouched() {
        let schedule = compile(&qft_circuit(3).unwrap()).unwrap();
        let steps: Vec<Step> = schedule
            .steps()
            .iter()
            .map(|s| Step {
                arity: s.arity,
                applications: s.applications,
                phases: s
                    .phases
                    .iter()
                    .filter(|p| matches!(p.kind(), PhaseKind::HorizontalTeleport | PhaseKind::VerticalTeleport))
                    .take(2)
                    .cloned()
                    .collect(),
            })
            .take(1)
            .collect();
        let teleports_only = Schedule::new(GridLayout::new(3), steps).unwrap();
        let input = StateVector::basis(3, 6);
        let (out, _) = execute_schedule(&teleports_only, &input).unwrap();
        assert_eq!(out.amplitudes(), input.amplitudes());
    }

    #[test]
    fn report_counts() {
        let schedule = compile(&qft_circuit(4).unwrap()).unwrap();
        let run = execute_observed(&schedule, &StateVector::zero(4), |_| {}).unwrap();
        assert_eq!(run.report.broadcasts, 10);
        assert_eq!(run.report.restorations, 10);
        assert!(run.report.min_ancilla_purity >= 1.0 - BASIS_TOLERANCE);
        assert_eq!(run.state.qubits(), 4);
    }

    #[test]
    fn non_adjacent_pair_is_rejected() {
        let circuit = Circuit::new(2, vec![GateApplication::single(GateSpec::h(), 0)]).unwrap();
        let mut steps = compile(&circuit).unwrap().steps().to_vec();
        for phase in &mut steps[0].phases {
            if let Phase::Broadcast { pairs, .. } = phase {
                pairs[0].0 = GridPos::new(0, 0);
            }
        }
        let schedule = Schedule::new(GridLayout::new(2), steps).unwrap();
        assert!(matches!(
            execute_schedule(&schedule, &StateVector::zero(2)),
            Err(ExecutionError::Adjacency { step: 0, .. })
        ));
    }

    #[test]
    fn wrong_input_size() {
        let schedule = compile(&Circuit::empty(2).unwrap()).unwrap();
        assert!(matches!(
            execute_schedule(&schedule, &StateVector::zero(3)),
            Err(ExecutionError::InputSize { expected: 2, found: 3 })
        ));
    }
}
