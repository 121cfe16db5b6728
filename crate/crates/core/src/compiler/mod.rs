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

//! Circuit to schedule compilation.
//!
//! Each extended step becomes a fixed sequence of phases:
//!
//! 1. `horizontal-teleport`: data qubits move along their rows into the
//!    columns chosen by the rearrangement.
//! 2. `vertical-teleport`: data qubits drop to the bottom working row (and
//!    two-qubit controls into the ancilla row under their target).
//! 3. `ancilla-teleport`: prepared |0⟩/|1⟩ qubits move from the pools into
//!    the ancilla row. Runs alongside phase 2.
//! 4. `broadcast`: one controlled gate applied to every (ancilla row, bottom
//!    row) pair at once.
//! 5. `cleanup-teleport`: two-qubit steps only; each control takes two
//!    teleports back to its vacant bottom-row cell.
//! 6. `reinitialize`: ancilla-row controls are released and the pools
//!    re-prepared. Runs alongside the next step's data phases.
//! 7. `rotate`: zero-cost relabelling so the register, now on the bottom
//!    row, reads as the leftmost column for the next step.

mod cost;
mod format;

pub use cost::{CostReport, StepCost};
pub use format::ScheduleFormatError;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{extend_circuit, Circuit, GateSpec};
use crate::grid::{GridError, GridLayout, GridPos, GridState};
use crate::placer::{plan_single_qubit_step, plan_two_qubit_step, PlacementPlan, PlanError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("gate {gate} has arity {arity}; only 1 and 2 are supported")]
    Arity { gate: String, arity: u8 },
    #[error("teleports in one phase form a cycle")]
    CyclicMoves,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseKind {
    HorizontalTeleport,
    VerticalTeleport,
    AncillaTeleport,
    Broadcast,
    CleanupTeleport,
    Reinitialize,
    Rotate,
}

impl PhaseKind {
    /// Phases that overlap an adjacent data phase and add no depth.
    pub fn is_concurrent(self) -> bool {
        matches!(self, PhaseKind::AncillaTeleport | PhaseKind::Reinitialize)
    }

    pub fn name(self) -> &'static str {
        match self {
            PhaseKind::HorizontalTeleport => "horizontal-teleport",
            PhaseKind::VerticalTeleport => "vertical-teleport",
            PhaseKind::AncillaTeleport => "ancilla-teleport",
            PhaseKind::Broadcast => "broadcast",
            PhaseKind::CleanupTeleport => "cleanup-teleport",
            PhaseKind::Reinitialize => "reinitialize",
            PhaseKind::Rotate => "rotate",
        }
    }
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub from: GridPos,
    pub to: GridPos,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Phase {
    HorizontalTeleport { moves: Vec<Move> },
    VerticalTeleport { moves: Vec<Move> },
    AncillaTeleport { moves: Vec<Move> },
    /// `pairs` are `(control cell, data cell)`.
    Broadcast {
        gate: GateSpec,
        pairs: Vec<(GridPos, GridPos)>,
    },
    CleanupTeleport { moves: Vec<Move> },
    Reinitialize { cells: Vec<GridPos> },
    Rotate,
}

impl Phase {
    pub fn kind(&self) -> PhaseKind {
        match self {
            Phase::HorizontalTeleport { .. } => PhaseKind::HorizontalTeleport,
            Phase::VerticalTeleport { .. } => PhaseKind::VerticalTeleport,
            Phase::AncillaTeleport { .. } => PhaseKind::AncillaTeleport,
            Phase::Broadcast { .. } => PhaseKind::Broadcast,
            Phase::CleanupTeleport { .. } => PhaseKind::CleanupTeleport,
            Phase::Reinitialize { .. } => PhaseKind::Reinitialize,
            Phase::Rotate => PhaseKind::Rotate,
        }
    }

    /// Teleports of a teleport phase; empty for other kinds.
    pub fn moves(&self) -> &[Move] {
        match self {
            Phase::HorizontalTeleport { moves }
            | Phase::VerticalTeleport { moves }
            | Phase::AncillaTeleport { moves }
            | Phase::CleanupTeleport { moves } => moves,
            _ => &[],
        }
    }
}

/// The phases compiled from one extended step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    /// Arity of the step's source gate.
    pub arity: u8,
    /// Gate applications grouped into the step.
    pub applications: usize,
    pub phases: Vec<Phase>,
}

impl Step {
    pub fn broadcasts(&self) -> impl Iterator<Item = (&GateSpec, &[(GridPos, GridPos)])> {
        self.phases.iter().filter_map(|p| match p {
            Phase::Broadcast { gate, pairs } => Some((gate, pairs.as_slice())),
            _ => None,
        })
    }

    /// Phases that add depth: every phase except the concurrent ones.
    pub fn sequential_phases(&self) -> usize {
        self.phases.iter().filter(|p| !p.kind().is_concurrent()).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    layout: GridLayout,
    steps: Vec<Step>,
    initial_placement: GridState,
}

impl Schedule {
    pub fn new(layout: GridLayout, steps: Vec<Step>) -> Result<Self, GridError> {
        let initial_placement = GridState::initial(layout, layout.side())?;
        Ok(Schedule {
            layout,
            steps,
            initial_placement,
        })
    }

    pub fn layout(&self) -> GridLayout {
        self.layout
    }

    /// Working-register size; equal to the grid side.
    pub fn register(&self) -> usize {
        self.layout.side()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn initial_placement(&self) -> &GridState {
        &self.initial_placement
    }

    pub fn phases(&self) -> impl Iterator<Item = &Phase> {
        self.steps.iter().flat_map(|s| s.phases.iter())
    }
}

/// Compiles a circuit into a schedule on a grid of side `N = n`.
pub fn compile(circuit: &Circuit) -> Result<Schedule, CompileError> {
    let layout = GridLayout::new(circuit.qubits());
    let mut grid = GridState::initial(layout, circuit.qubits())?;
    let mut steps = Vec::new();
    for step in extend_circuit(circuit) {
        let plan = match step.arity() {
            1 => plan_single_qubit_step(&step, &grid)?,
            2 => plan_two_qubit_step(&step, &grid)?,
            arity => {
                return Err(CompileError::Arity {
                    gate: step.gate().label().to_string(),
                    arity,
                })
            }
        };
        let phases = stage(&plan, step.gate(), &mut grid)?;
        steps.push(Step {
            arity: step.arity(),
            applications: step.applications().len(),
            phases,
        });
    }
    Ok(Schedule::new(layout, steps)?)
}

/// Turns a plan into phases, executing the moves on `grid` so that every
/// source position is known and every teleport is checked.
fn stage(
    plan: &PlacementPlan,
    gate: &GateSpec,
    grid: &mut GridState,
) -> Result<Vec<Phase>, CompileError> {
    let layout = grid.layout();
    let mut phases = Vec::with_capacity(7);

    let position = |grid: &GridState, q| {
        grid.position_of(q)
            .ok_or_else(|| CompileError::Invariant(format!("qubit {q} left the grid")))
    };

    let mut horizontal = Vec::with_capacity(plan.horizontal.len());
    for &(q, col) in &plan.horizontal {
        let from = position(grid, q)?;
        horizontal.push(Move { from, to: GridPos::new(from.row, col) });
    }
    let horizontal = apply_moves(grid, horizontal, PhaseKind::HorizontalTeleport)?;
    phases.push(Phase::HorizontalTeleport { moves: horizontal });

    let mut vertical = Vec::with_capacity(plan.vertical.len());
    for &(q, to) in &plan.vertical {
        vertical.push(Move { from: position(grid, q)?, to });
    }
    let vertical = apply_moves(grid, vertical, PhaseKind::VerticalTeleport)?;
    phases.push(Phase::VerticalTeleport { moves: vertical });

    let ancilla: Vec<_> = plan
        .ancilla_moves
        .iter()
        .map(|&(basis, col)| Move {
            from: GridPos::new(layout.pool_row(basis), col),
            to: GridPos::new(layout.ancilla_row(), col),
        })
        .collect();
    let ancilla = apply_moves(grid, ancilla, PhaseKind::AncillaTeleport)?;

    if !crate::grid::adjacency_check(&plan.pairs) {
        return Err(CompileError::Invariant("broadcast pair is not adjacent".into()));
    }
    let mut reset: Vec<_> = ancilla.iter().map(|m| m.to).collect();
    reset.extend(ancilla.iter().map(|m| m.from));
    phases.push(Phase::AncillaTeleport { moves: ancilla });
    phases.push(Phase::Broadcast {
        gate: gate.controlled(),
        pairs: plan.pairs.clone(),
    });

    if gate.arity() == 2 {
        let cleanup: Vec<_> = plan.cleanup.iter().map(|&(from, to)| Move { from, to }).collect();
        for m in &cleanup {
            grid.teleport_in_place(m.from, m.to, PhaseKind::CleanupTeleport)?;
        }
        phases.push(Phase::CleanupTeleport { moves: cleanup });
    }

    grid.reinitialize(&reset)?;
    phases.push(Phase::Reinitialize { cells: reset });

    grid.rotate_in_place()?;
    phases.push(Phase::Rotate);
    Ok(phases)
}

/// Orders simultaneous teleports so that each target is empty when its move
/// runs, then applies them.
fn apply_moves(
    grid: &mut GridState,
    mut pending: Vec<Move>,
    kind: PhaseKind,
) -> Result<Vec<Move>, CompileError> {
    let mut ordered = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let next = pending
            .iter()
            .position(|m| pending.iter().all(|other| other.from != m.to))
            .ok_or(CompileError::CyclicMoves)?;
        let m = pending.remove(next);
        grid.teleport_in_place(m.from, m.to, kind)?;
        ordered.push(m);
    }
    Ok(ordered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{qft_circuit, GateApplication};
    use crate::grid::Basis;

    #[test]
    fn empty_circuit_compiles_to_empty_schedule() {
        let schedule = compile(&Circuit::empty(3).unwrap()).unwrap();
        assert!(schedule.steps().is_empty());
        assert_eq!(schedule.layout().side(), 3);
    }

    #[test]
    fn single_hadamard() {
        let circuit = Circuit::new(1, vec![GateApplication::single(GateSpec::h(), 0)]).unwrap();
        let schedule = compile(&circuit).unwrap();
        assert_eq!(schedule.steps().len(), 1);
        let broadcasts: Vec<_> = schedule.steps()[0].broadcasts().collect();
        assert_eq!(broadcasts.len(), 1);
        let (gate, pairs) = broadcasts[0];
        assert_eq!(gate, &GateSpec::h().controlled());
        assert_eq!(pairs, &[(GridPos::new(1, 0), GridPos::new(0, 0))]);
        let ancilla = schedule.steps()[0]
            .phases
            .iter()
            .find(|p| p.kind() == PhaseKind::AncillaTeleport)
            .unwrap();
        let pool_one = GridPos::new(GridLayout::new(1).pool_row(Basis::One), 0);
        assert_eq!(ancilla.moves(), &[Move { from: pool_one, to: GridPos::new(1, 0) }]);
    }

    #[test]
    fn qft5_has_one_broadcast_per_gate() {
        let schedule = compile(&qft_circuit(5).unwrap()).unwrap();
        assert_eq!(schedule.steps().len(), 15);
        assert_eq!(schedule.phases().filter(|p| p.kind() == PhaseKind::Broadcast).count(), 15);
    }

    #[test]
    fn phase_order_is_fixed() {
        let circuit = Circuit::new(
            3,
            vec![
                GateApplication::single(GateSpec::t(), 2),
                GateApplication::controlled(GateSpec::cz(), 0, 2),
            ],
        )
        .unwrap();
        let schedule = compile(&circuit).unwrap();
        let kinds = |i: usize| -> Vec<_> { schedule.steps()[i].phases.iter().map(Phase::kind).collect() };
        use PhaseKind::*;
        assert_eq!(
            kinds(0),
            vec![HorizontalTeleport, VerticalTeleport, AncillaTeleport, Broadcast, Reinitialize, Rotate]
        );
        assert_eq!(
            kinds(1),
            vec![
                HorizontalTeleport,
                VerticalTeleport,
                AncillaTeleport,
                Broadcast,
                CleanupTeleport,
                Reinitialize,
                Rotate
            ]
        );
        assert_eq!(schedule.steps()[1].sequential_phases(), 5);
    }

    #[test]
    fn grouped_two_qubit_gates_share_a_broadcast() {
        let circuit = Circuit::new(
            4,
            vec![
                GateApplication::controlled(GateSpec::cnot(), 0, 1),
                GateApplication::controlled(GateSpec::cnot(), 3, 2),
            ],
        )
        .unwrap();
        let schedule = compile(&circuit).unwrap();
        assert_eq!(schedule.steps().len(), 1);
        let step = &schedule.steps()[0];
        assert_eq!(step.applications, 2);
        let cleanup = step.phases.iter().find(|p| p.kind() == PhaseKind::CleanupTeleport).unwrap();
        assert_eq!(cleanup.moves().len(), 4);
        let (_, pairs) = step.broadcasts().next().unwrap();
        assert_eq!(pairs.len(), 2);
    }

    #[test]
    fn compilation_is_deterministic() {
        let circuit = qft_circuit(4).unwrap();
        assert_eq!(compile(&circuit).unwrap(), compile(&circuit).unwrap());
    }
}
