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

use std::fmt;

use super::{Phase, PhaseKind, Schedule, Step};
use crate::grid::GridLayout;

/// Most phases that may add depth to a single step.
pub const MAX_SEQUENTIAL_PHASES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepCost {
    pub arity: u8,
    pub applications: usize,
    pub horizontal: usize,
    pub vertical: usize,
    pub ancilla: usize,
    pub cleanup: usize,
    /// Pool cells re-prepared.
    pub reinit: usize,
    /// Ancilla-row controls released.
    pub released: usize,
    pub broadcasts: usize,
    pub phase_records: usize,
    pub sequential_phases: usize,
}

impl StepCost {
    fn of(step: &Step, layout: GridLayout) -> Self {
        let mut cost = StepCost {
            arity: step.arity,
            applications: step.applications,
            phase_records: step.phases.len(),
            sequential_phases: step.sequential_phases(),
            ..StepCost::default()
        };
        for phase in &step.phases {
            let moves = phase.moves().len();
            match phase {
                Phase::HorizontalTeleport { .. } => cost.horizontal += moves,
                Phase::VerticalTeleport { .. } => cost.vertical += moves,
                Phase::AncillaTeleport { .. } => cost.ancilla += moves,
                Phase::CleanupTeleport { .. } => cost.cleanup += moves,
                Phase::Broadcast { .. } => cost.broadcasts += 1,
                Phase::Reinitialize { cells } => {
                    let pools = cells.iter().filter(|c| c.row > layout.ancilla_row()).count();
                    cost.reinit += pools;
                    cost.released += cells.len() - pools;
                }
                Phase::Rotate => {}
            }
        }
        cost
    }

    pub fn teleports(&self) -> usize {
        self.horizontal + self.vertical + self.ancilla + self.cleanup
    }
}

/// Space and step counts of a schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostReport {
    pub n: usize,
    pub working_qubits: usize,
    pub ancilla_qubits: usize,
    pub pool_qubits: usize,
    /// `N² + 4N + 2N`.
    pub total_grid_qubits: usize,
    pub steps: Vec<StepCost>,
    pub broadcast_phase_count: usize,
    pub reinit_count: usize,
}

impl CostReport {
    pub fn of(schedule: &Schedule) -> Self {
        let layout = schedule.layout();
        let steps: Vec<_> = schedule.steps().iter().map(|s| StepCost::of(s, layout)).collect();
        CostReport {
            n: layout.side(),
            working_qubits: layout.working_qubits(),
            ancilla_qubits: layout.ancilla_qubits(),
            pool_qubits: layout.pool_qubits(),
            total_grid_qubits: layout.total_qubits(),
            broadcast_phase_count: schedule
                .phases()
                .filter(|p| p.kind() == PhaseKind::Broadcast)
                .count(),
            reinit_count: steps.iter().map(|s| s.reinit).sum(),
            steps,
        }
    }

    pub fn extended_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn teleports(&self) -> usize {
        self.steps.iter().map(StepCost::teleports).sum()
    }

    /// Per-step bound violations, empty when the schedule is within budget:
    /// at most `N` moves per teleport category, two cleanup teleports per
    /// two-qubit application (none for one-qubit steps), at most `3N + 2`
    /// teleports, one broadcast, and at most six depth-adding phases.
    pub fn violations(&self) -> Vec<String> {
        let n = self.n;
        let mut out = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            let mut check = |ok: bool, what: String| {
                if !ok {
                    out.push(format!("step {i}: {what}"));
                }
            };
            check(s.horizontal <= n, format!("{} horizontal teleports > N", s.horizontal));
            check(s.vertical <= n, format!("{} vertical teleports > N", s.vertical));
            check(s.ancilla <= n, format!("{} ancilla teleports > N", s.ancilla));
            check(s.reinit <= n, format!("{} reinitializations > N", s.reinit));
            let cleanup = if s.arity == 2 { 2 * s.applications } else { 0 };
            check(s.cleanup == cleanup, format!("{} cleanup teleports, expected {cleanup}", s.cleanup));
            check(s.teleports() <= 3 * n + 2, format!("{} teleports > 3N + 2", s.teleports()));
            check(s.broadcasts == 1, format!("{} broadcast phases", s.broadcasts));
            check(
                s.sequential_phases <= MAX_SEQUENTIAL_PHASES,
                format!("{} sequential phases", s.sequential_phases),
            );
        }
        out
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(
            f,
            "total_grid_qubits: {} (working {} + ancilla rows {} + pools {})",
            self.total_grid_qubits, self.working_qubits, self.ancilla_qubits, self.pool_qubits
        )?;
        writeln!(f, "extended_steps: {}", self.extended_steps())?;
        writeln!(f, "broadcast_phase_count: {}", self.broadcast_phase_count)?;
        writeln!(f, "teleports: {}", self.teleports())?;
        writeln!(f, "reinit_count: {}", self.reinit_count)?;
        writeln!(f, "step  arity  apps  horiz  vert  anc  clean  reinit  phases  depth")?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "{:>4}  {:>5}  {:>4}  {:>5}  {:>4}  {:>3}  {:>5}  {:>6}  {:>6}  {:>5}",
                i,
                s.arity,
                s.applications,
                s.horizontal,
                s.vertical,
                s.ancilla,
                s.cleanup,
                s.reinit,
                s.phase_records,
                s.sequential_phases
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{qft_circuit, Circuit, GateApplication, GateSpec};
    use crate::compiler::compile;

    #[test]
    fn qft5_budget() {
        let report = CostReport::of(&compile(&qft_circuit(5).unwrap()).unwrap());
        assert_eq!(report.total_grid_qubits, 55);
        assert_eq!(report.broadcast_phase_count, 15);
        assert_eq!(report.extended_steps(), 15);
        assert!(report.violations().is_empty(), "{:?}", report.violations());
        for step in report.steps.iter().filter(|s| s.arity == 2) {
            assert_eq!(step.cleanup, 2);
        }
    }

    #[test]
    fn first_single_qubit_step_from_the_leftmost_column() {
        // qubit 4 already sits in column 0, everyone else moves across
        let circuit = Circuit::new(5, vec![GateApplication::single(GateSpec::h(), 0)]).unwrap();
        let report = CostReport::of(&compile(&circuit).unwrap());
        let s = &report.steps[0];
        assert_eq!((s.horizontal, s.vertical, s.ancilla, s.cleanup), (4, 4, 5, 0));
        assert_eq!(s.reinit, 5);
    }

    #[test]
    fn empty_schedule_report() {
        let report = CostReport::of(&compile(&Circuit::empty(2).unwrap()).unwrap());
        assert_eq!(report.broadcast_phase_count, 0);
        assert_eq!(report.total_grid_qubits, 4 + 8 + 4);
        assert!(report.violations().is_empty());
    }
}
