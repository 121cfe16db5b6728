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

//! Target positions for each computational step.
//!
//! Every step starts from the column assignment of [`plan_rearrangement`].
//! Data qubits then teleport horizontally into their columns and vertically
//! down to the bottom working row, and each occupied column receives a
//! control in the ancilla row beneath it. For one-qubit gates the control is
//! a prepared |1⟩ under the qubits that should be acted on and a prepared
//! |0⟩ elsewhere. For two-qubit gates the gate's own control qubit is moved
//! into the ancilla cell under its target, leaving its assigned bottom-row
//! cell vacant until two cleanup teleports bring it back.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::circuit::{ExtendedStep, QubitId};
use crate::grid::{Basis, GridPos, GridState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("qubit {0} appears in more than one interaction")]
    QubitInTwoPairs(QubitId),
    #[error("qubit {0} cannot interact with itself")]
    SelfInteraction(QubitId),
    #[error("qubit {qubit} out of range for a {register}-qubit register")]
    OutOfRange { qubit: QubitId, register: usize },
    #[error("register of {register} qubits needs more than the {side} columns available")]
    RegisterTooLarge { register: usize, side: usize },
    #[error("expected a step of arity {expected}, got {found}")]
    WrongArity { expected: u8, found: u8 },
    #[error("qubit {0} is not on the grid")]
    QubitMissing(QubitId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Alone,
    Paired(QubitId),
}

/// Column assignment for one step, traced from the rearrangement listing.
///
/// `position` starts at `n` (1-based). Scanning qubits in index order, a
/// qubit paired with a not-yet-placed partner takes `position` and the
/// partner `position - 1`; a single or idle qubit takes `position`. Already
/// placed qubits are skipped. Returned columns are 0-based, in placement
/// order.
pub fn plan_rearrangement(
    pairs: &[(QubitId, QubitId)],
    n: usize,
) -> Result<Vec<(QubitId, usize)>, PlanError> {
    let mut roles = vec![Role::Alone; n];
    for &(a, b) in pairs {
        if a == b {
            return Err(PlanError::SelfInteraction(a));
        }
        for q in [a, b] {
            if q >= n {
                return Err(PlanError::OutOfRange { qubit: q, register: n });
            }
            if roles[q] != Role::Alone {
                return Err(PlanError::QubitInTwoPairs(q));
            }
        }
        roles[a] = Role::Paired(b);
        roles[b] = Role::Paired(a);
    }

    let mut position = n;
    let mut teleported = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if teleported[i] {
            continue;
        }
        match roles[i] {
            Role::Paired(j) => {
                out.push((i, position - 1));
                out.push((j, position - 2));
                position -= 2;
                teleported[j] = true;
            }
            Role::Alone => {
                out.push((i, position - 1));
                position -= 1;
            }
        }
        teleported[i] = true;
    }
    Ok(out)
}

/// Every move needed to stage one extended step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlacementPlan {
    /// `(qubit, column)`; the qubit keeps its row.
    pub horizontal: Vec<(QubitId, usize)>,
    /// `(qubit, cell)`; the qubit keeps its column.
    pub vertical: Vec<(QubitId, GridPos)>,
    /// A pool qubit of the given basis moved into the ancilla row of a
    /// column.
    pub ancilla_moves: Vec<(Basis, usize)>,
    /// Teleports returning two-qubit controls to their vacant cells, in
    /// order.
    pub cleanup: Vec<(GridPos, GridPos)>,
    /// Qubits the broadcast acts on non-trivially.
    pub active_set: BTreeSet<QubitId>,
    /// `(control cell, data cell)` pairs for the broadcast.
    pub pairs: Vec<(GridPos, GridPos)>,
}

impl PlacementPlan {
    pub fn teleport_count(&self) -> usize {
        self.horizontal.len() + self.vertical.len() + self.ancilla_moves.len() + self.cleanup.len()
    }
}

struct Staging<'a> {
    grid: &'a GridState,
    register: BTreeMap<QubitId, GridPos>,
    plan: PlacementPlan,
}

impl<'a> Staging<'a> {
    fn new(step: &ExtendedStep, grid: &'a GridState, expected: u8) -> Result<Self, PlanError> {
        if step.arity() != expected {
            return Err(PlanError::WrongArity {
                expected,
                found: step.arity(),
            });
        }
        let register: BTreeMap<_, _> = grid.register().into_iter().collect();
        let side = grid.layout().side();
        if register.len() > side {
            return Err(PlanError::RegisterTooLarge {
                register: register.len(),
                side,
            });
        }
        for app in step.applications() {
            for q in app.qubits() {
                if !register.contains_key(&q) {
                    return Err(PlanError::QubitMissing(q));
                }
            }
        }
        Ok(Staging {
            grid,
            register,
            plan: PlacementPlan::default(),
        })
    }

    /// Horizontal then vertical moves taking `qubit` to `cell`.
    fn route(&mut self, qubit: QubitId, cell: GridPos) {
        let start = self.register[&qubit];
        if start.col != cell.col {
            self.plan.horizontal.push((qubit, cell.col));
        }
        if start.row != cell.row {
            self.plan.vertical.push((qubit, cell));
        }
    }

    fn bottom(&self, col: usize) -> GridPos {
        GridPos::new(self.grid.layout().bottom_row(), col)
    }

    fn ancilla(&self, col: usize) -> GridPos {
        GridPos::new(self.grid.layout().ancilla_row(), col)
    }

    fn prepared_control(&mut self, basis: Basis, col: usize) {
        self.plan.ancilla_moves.push((basis, col));
        let pair = (self.ancilla(col), self.bottom(col));
        self.plan.pairs.push(pair);
    }
}

/// Stages a one-qubit step: each register qubit descends into its own
/// column, with a prepared |1⟩ control under the qubits the gate acts on and
/// a prepared |0⟩ under the rest.
pub fn plan_single_qubit_step(
    step: &ExtendedStep,
    grid: &GridState,
) -> Result<PlacementPlan, PlanError> {
    let mut staging = Staging::new(step, grid, 1)?;
    let active: BTreeSet<_> = step.applications().iter().map(|a| a.target).collect();
    let columns = assign_columns(&staging.register, &[])?;
    for (qubit, col) in columns {
        let cell = staging.bottom(col);
        staging.route(qubit, cell);
        let basis = if active.contains(&qubit) { Basis::One } else { Basis::Zero };
        staging.prepared_control(basis, col);
    }
    staging.plan.active_set = active;
    Ok(staging.plan)
}

/// Stages a two-qubit step: each target descends into its column with its
/// control in the ancilla cell directly beneath, the control's own column
/// stays vacant, and uninvolved qubits get a prepared |0⟩ control.
pub fn plan_two_qubit_step(
    step: &ExtendedStep,
    grid: &GridState,
) -> Result<PlacementPlan, PlanError> {
    let mut staging = Staging::new(step, grid, 2)?;
    let pairs: Vec<_> = step
        .applications()
        .iter()
        .map(|a| (a.control.expect("arity-2 application has a control"), a.target))
        .collect();
    let columns: BTreeMap<_, _> = assign_columns(&staging.register, &pairs)?.into_iter().collect();
    let controls: BTreeMap<_, _> = pairs.iter().copied().collect();
    let targets: BTreeMap<_, _> = pairs.iter().map(|&(c, t)| (t, c)).collect();

    let mut order: Vec<_> = columns.iter().map(|(&q, &c)| (c, q)).collect();
    order.sort_unstable_by(|a, b| b.cmp(a));
    for (col, qubit) in order {
        if let Some(&target) = controls.get(&qubit) {
            let target_col = columns[&target];
            let cell = staging.ancilla(target_col);
            staging.route(qubit, cell);
            let vacant = staging.bottom(col);
            let via = staging.ancilla(col);
            staging.plan.cleanup.push((cell, via));
            staging.plan.cleanup.push((via, vacant));
        } else if targets.contains_key(&qubit) {
            let cell = staging.bottom(col);
            staging.route(qubit, cell);
            let pair = (staging.ancilla(col), cell);
            staging.plan.pairs.push(pair);
            staging.plan.active_set.insert(qubit);
        } else {
            let cell = staging.bottom(col);
            staging.route(qubit, cell);
            staging.prepared_control(Basis::Zero, col);
        }
    }
    staging.plan.pairs.sort_unstable_by_key(|(_, data)| data.col);
    Ok(staging.plan)
}

/// Runs the rearrangement over the qubits present on the grid, ordered by
/// id.
fn assign_columns(
    register: &BTreeMap<QubitId, GridPos>,
    pairs: &[(QubitId, QubitId)],
) -> Result<Vec<(QubitId, usize)>, PlanError> {
    let ids: Vec<_> = register.keys().copied().collect();
    let index: BTreeMap<_, _> = ids.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let local: Vec<_> = pairs.iter().map(|(a, b)| (index[a], index[b])).collect();
    let mut columns = plan_rearrangement(&local, ids.len())?;
    for (q, _) in &mut columns {
        *q = ids[*q];
    }
    columns.sort_unstable();
    Ok(columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{extend_circuit, Circuit, GateApplication, GateSpec};
    use crate::compiler::PhaseKind;
    use crate::grid::{adjacency_check, GridLayout};

    fn one_based(assignment: Vec<(QubitId, usize)>) -> Vec<(usize, usize)> {
        assignment.into_iter().map(|(q, c)| (q + 1, c + 1)).collect()
    }

    #[test]
    fn rearrangement_of_the_two_pair_example() {
        // pairs (1,4), (3,5) and qubit 2 single, 1-based
        let got = plan_rearrangement(&[(0, 3), (2, 4)], 5).unwrap();
        assert_eq!(one_based(got), vec![(1, 5), (4, 4), (2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn rearrangement_of_singles() {
        assert_eq!(one_based(plan_rearrangement(&[], 3).unwrap()), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(one_based(plan_rearrangement(&[], 1).unwrap()), vec![(1, 1)]);
    }

    #[test]
    fn rearrangement_rejects_double_pairing() {
        assert_eq!(
            plan_rearrangement(&[(0, 1), (1, 2)], 3),
            Err(PlanError::QubitInTwoPairs(1))
        );
        assert_eq!(plan_rearrangement(&[(2, 2)], 3), Err(PlanError::SelfInteraction(2)));
    }

    fn step_of(n: usize, apps: Vec<GateApplication>) -> ExtendedStep {
        let steps = extend_circuit(&Circuit::new(n, apps).unwrap());
        assert_eq!(steps.len(), 1);
        steps.into_iter().next().unwrap()
    }

    fn start(n: usize) -> GridState {
        GridState::initial(GridLayout::new(n), n).unwrap()
    }

    #[test]
    fn single_qubit_step_marks_only_active_columns() {
        let step = step_of(5, vec![GateApplication::single(GateSpec::h(), 0)]);
        let plan = plan_single_qubit_step(&step, &start(5)).unwrap();
        // qubit 0 takes the rightmost column
        assert_eq!(plan.ancilla_moves[0], (Basis::One, 4));
        assert_eq!(plan.ancilla_moves.iter().filter(|(b, _)| *b == Basis::Zero).count(), 4);
        assert!(plan.cleanup.is_empty());
        assert_eq!(plan.pairs.len(), 5);
        assert!(adjacency_check(&plan.pairs));
    }

    #[test]
    fn single_qubit_step_on_every_qubit() {
        let apps = (0..5).map(|q| GateApplication::single(GateSpec::x(), q)).collect();
        let plan = plan_single_qubit_step(&step_of(5, apps), &start(5)).unwrap();
        assert!(plan.ancilla_moves.iter().all(|(b, _)| *b == Basis::One));
        assert_eq!(plan.active_set.len(), 5);
    }

    #[test]
    fn pre_aligned_register_needs_no_horizontal_moves() {
        // register on the top row, qubit q already above column 4 - q
        let (h, v) = (PhaseKind::HorizontalTeleport, PhaseKind::VerticalTeleport);
        let mut grid = start(5);
        grid.teleport_in_place(GridPos::new(0, 0), GridPos::new(0, 4), h).unwrap();
        for q in 1..4 {
            let col = 4 - q;
            grid.teleport_in_place(GridPos::new(q, 0), GridPos::new(q, col), h).unwrap();
            grid.teleport_in_place(GridPos::new(q, col), GridPos::new(0, col), v).unwrap();
        }
        grid.teleport_in_place(GridPos::new(4, 0), GridPos::new(0, 0), v).unwrap();

        let step = step_of(5, vec![GateApplication::single(GateSpec::h(), 2)]);
        let plan = plan_single_qubit_step(&step, &grid).unwrap();
        assert_eq!(plan.horizontal.len(), 0);
        assert_eq!(plan.vertical.len(), 5);
        assert_eq!(plan.ancilla_moves.len(), 5);
    }

    #[test]
    fn two_qubit_step_places_control_under_target() {
        // CP from qubit 2 onto qubit 1 (1-based), the first rotation of the
        // worked QFT example
        let step = step_of(5, vec![GateApplication::controlled(GateSpec::qft_rotation(2), 1, 0)]);
        let plan = plan_two_qubit_step(&step, &start(5)).unwrap();
        let target_cell = GridPos::new(4, 4);
        let control_cell = GridPos::new(5, 4);
        assert!(plan.vertical.contains(&(0, target_cell)));
        assert!(plan.vertical.contains(&(1, control_cell)));
        assert_eq!(plan.ancilla_moves, vec![(Basis::Zero, 2), (Basis::Zero, 1), (Basis::Zero, 0)]);
        // column 4 (1-based) is the vacant spot; its ancilla cell is unused
        assert!(plan.ancilla_moves.iter().all(|&(_, c)| c != 3));
        assert_eq!(
            plan.cleanup,
            vec![(control_cell, GridPos::new(5, 3)), (GridPos::new(5, 3), GridPos::new(4, 3))]
        );
        assert_eq!(plan.active_set, BTreeSet::from([0]));
        assert!(adjacency_check(&plan.pairs));
        assert!(plan.pairs.contains(&(control_cell, target_cell)));
    }

    #[test]
    fn two_qubit_step_on_two_qubits_needs_no_pool() {
        let step = step_of(2, vec![GateApplication::controlled(GateSpec::cnot(), 1, 0)]);
        let plan = plan_two_qubit_step(&step, &start(2)).unwrap();
        assert!(plan.vertical.contains(&(0, GridPos::new(1, 1))));
        assert!(plan.vertical.contains(&(1, GridPos::new(2, 1))));
        assert!(plan.ancilla_moves.is_empty());
        assert_eq!(plan.pairs, vec![(GridPos::new(2, 1), GridPos::new(1, 1))]);
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let step = step_of(2, vec![GateApplication::single(GateSpec::h(), 0)]);
        assert_eq!(
            plan_two_qubit_step(&step, &start(2)),
            Err(PlanError::WrongArity { expected: 2, found: 1 })
        );
    }
}
