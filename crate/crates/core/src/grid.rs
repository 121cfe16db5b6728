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

//! The two-dimensional qubit grid.
//!
//! The grid has an `N × N` working area, one `N`-cell ancilla row along each
//! of its four edges, and `2N` prepared-state cells (`N` holding |0⟩ and `N`
//! holding |1⟩). Positions are logical: they are read in the current
//! orientation, where rows `0..N` are the working area, row `N` is the
//! ancilla row under the bottom edge, and rows `N+1`/`N+2` are the |0⟩ and
//! |1⟩ pools. Rotating the register changes only the orientation, so the
//! same physical cells are read under new logical coordinates and a
//! different edge's ancilla row becomes row `N`. The pools stay attached to
//! the active ancilla row.
//!
//! Teleportation moves an occupant along a row or column to an empty cell;
//! cells in between are irrelevant.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::QubitId;
use crate::compiler::PhaseKind;

/// A logical grid coordinate, serialized as `[row, col]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct GridPos {
    pub row: usize,
    pub col: usize,
}

impl GridPos {
    pub const fn new(row: usize, col: usize) -> Self {
        GridPos { row, col }
    }

    pub fn manhattan(&self, other: &GridPos) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

impl From<[usize; 2]> for GridPos {
    fn from([row, col]: [usize; 2]) -> Self {
        GridPos { row, col }
    }
}

impl From<GridPos> for [usize; 2] {
    fn from(pos: GridPos) -> Self {
        [pos.row, pos.col]
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Computational basis value of a prepared qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Zero,
    One,
}

impl Basis {
    pub fn bit(self) -> usize {
        match self {
            Basis::Zero => 0,
            Basis::One => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occupant {
    Working(QubitId),
    /// A prepared qubit sitting in an ancilla row, acting as a broadcast
    /// control.
    Ancilla(Basis),
    /// A prepared qubit still in its pool.
    Pool(Basis),
    Empty,
}

impl Occupant {
    pub fn is_empty(&self) -> bool {
        matches!(self, Occupant::Empty)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("position {0} is outside the grid")]
    OutOfBounds(GridPos),
    #[error("teleport {from} -> {to} is not along a row or column")]
    AxisViolation { from: GridPos, to: GridPos },
    #[error("teleport source and target are both {0}")]
    SameCell(GridPos),
    #[error("teleport target {to} is occupied by {occupant:?}")]
    Collision { to: GridPos, occupant: Occupant },
    #[error("teleport source {0} is empty")]
    SourceEmpty(GridPos),
    #[error("{occupant:?} cannot be placed at {to}")]
    IllegalPlacement { occupant: Occupant, to: GridPos },
    #[error("working register does not lie on a single edge line")]
    NotOnEdge,
    #[error("register of {register} qubits does not fit a grid of side {side}")]
    RegisterTooLarge { register: usize, side: usize },
    #[error("cell {pos} holding {occupant:?} cannot be reinitialized")]
    BadReset { pos: GridPos, occupant: Occupant },
}

/// Grid dimensions. `side` is the side length `N` of the working area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridLayout {
    #[serde(rename = "n")]
    side: usize,
}

impl GridLayout {
    pub fn new(side: usize) -> Self {
        GridLayout { side }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn ancilla_row(&self) -> usize {
        self.side
    }

    pub fn pool_row(&self, basis: Basis) -> usize {
        self.side + 1 + basis.bit()
    }

    pub fn bottom_row(&self) -> usize {
        self.side - 1
    }

    pub fn working_qubits(&self) -> usize {
        self.side * self.side
    }

    /// One ancilla row per working-area edge.
    pub fn ancilla_qubits(&self) -> usize {
        4 * self.side
    }

    pub fn pool_qubits(&self) -> usize {
        2 * self.side
    }

    /// `N² + 4N + 2N`.
    pub fn total_qubits(&self) -> usize {
        self.working_qubits() + self.ancilla_qubits() + self.pool_qubits()
    }

    pub fn contains(&self, pos: GridPos) -> bool {
        pos.col < self.side && pos.row <= self.side + 2
    }
}

/// One recorded teleport.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeleportRecord {
    pub from: GridPos,
    pub to: GridPos,
    pub phase: PhaseKind,
}

/// Physical coordinate in the frame around the working area; `-1` and `N`
/// index the ancilla rows.
type Physical = (i64, i64);

/// Prepared-qubit bookkeeping compared before and after reinitialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncillaConfiguration {
    ancillas: Vec<(Physical, Basis)>,
    pools: Vec<Occupant>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    layout: GridLayout,
    orientation: u8,
    /// Non-empty cells of the working area and the four ancilla rows.
    frame: BTreeMap<Physical, Occupant>,
    /// `pools[b * N + col]` is the pool cell of basis `b` in column `col`.
    pools: Vec<Occupant>,
    log: Vec<TeleportRecord>,
}

impl GridState {
    /// The starting configuration: qubit `i` at `(i, 0)`, empty ancilla
    /// rows, full pools.
    pub fn initial(layout: GridLayout, register: usize) -> Result<Self, GridError> {
        if register > layout.side() {
            return Err(GridError::RegisterTooLarge {
                register,
                side: layout.side(),
            });
        }
        let n = layout.side();
        let frame = (0..register)
            .map(|q| ((q as i64, 0), Occupant::Working(q)))
            .collect();
        let pools = (0..2 * n)
            .map(|i| Occupant::Pool(if i < n { Basis::Zero } else { Basis::One }))
            .collect();
        Ok(GridState {
            layout,
            orientation: 0,
            frame,
            pools,
            log: Vec::new(),
        })
    }

    pub fn layout(&self) -> GridLayout {
        self.layout
    }

    pub fn orientation(&self) -> u8 {
        self.orientation
    }

    pub fn log(&self) -> &[TeleportRecord] {
        &self.log
    }

    fn side(&self) -> i64 {
        self.layout.side() as i64
    }

    fn rotate_once(&self, (r, c): Physical) -> Physical {
        (c, self.side() - 1 - r)
    }

    fn unrotate_once(&self, (r, c): Physical) -> Physical {
        (self.side() - 1 - c, r)
    }

    fn to_physical(&self, pos: GridPos) -> Physical {
        let mut p = (pos.row as i64, pos.col as i64);
        for _ in 0..self.orientation {
            p = self.unrotate_once(p);
        }
        p
    }

    fn to_logical(&self, physical: Physical) -> Option<GridPos> {
        let mut p = physical;
        for _ in 0..self.orientation {
            p = self.rotate_once(p);
        }
        let (r, c) = p;
        (r >= 0 && c >= 0 && c < self.side() && r <= self.side())
            .then(|| GridPos::new(r as usize, c as usize))
    }

    fn pool_index(&self, pos: GridPos) -> Option<usize> {
        let n = self.layout.side();
        (pos.row > n).then(|| (pos.row - n - 1) * n + pos.col)
    }

    pub fn occupant(&self, pos: GridPos) -> Result<Occupant, GridError> {
        if !self.layout.contains(pos) {
            return Err(GridError::OutOfBounds(pos));
        }
        Ok(match self.pool_index(pos) {
            Some(i) => self.pools[i],
            None => self
                .frame
                .get(&self.to_physical(pos))
                .copied()
                .unwrap_or(Occupant::Empty),
        })
    }

    fn set(&mut self, pos: GridPos, occupant: Occupant) {
        match self.pool_index(pos) {
            Some(i) => self.pools[i] = occupant,
            None => {
                let p = self.to_physical(pos);
                if occupant.is_empty() {
                    self.frame.remove(&p);
                } else {
                    self.frame.insert(p, occupant);
                }
            }
        }
    }

    /// Logical position of working qubit `qubit`, if it is on the visible
    /// grid.
    pub fn position_of(&self, qubit: QubitId) -> Option<GridPos> {
        self.frame
            .iter()
            .find(|(_, o)| **o == Occupant::Working(qubit))
            .and_then(|(p, _)| self.to_logical(*p))
    }

    /// `(qubit, position)` for every working qubit, ordered by qubit id.
    pub fn register(&self) -> Vec<(QubitId, GridPos)> {
        let mut out: Vec<_> = self
            .frame
            .iter()
            .filter_map(|(p, o)| match o {
                Occupant::Working(q) => self.to_logical(*p).map(|pos| (*q, pos)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// Moves the occupant at `from` to the empty cell `to`, returning the
    /// new grid.
    pub fn teleport(&self, from: GridPos, to: GridPos, phase: PhaseKind) -> Result<Self, GridError> {
        let mut next = self.clone();
        next.teleport_in_place(from, to, phase)?;
        Ok(next)
    }

    pub fn teleport_in_place(
        &mut self,
        from: GridPos,
        to: GridPos,
        phase: PhaseKind,
    ) -> Result<(), GridError> {
        let source = self.occupant(from)?;
        let target = self.occupant(to)?;
        if from == to {
            return Err(GridError::SameCell(from));
        }
        if from.row != to.row && from.col != to.col {
            return Err(GridError::AxisViolation { from, to });
        }
        if source.is_empty() {
            return Err(GridError::SourceEmpty(from));
        }
        if !target.is_empty() {
            return Err(GridError::Collision {
                to,
                occupant: target,
            });
        }
        let n = self.layout.side();
        let landed = match (source, to.row) {
            (Occupant::Working(_), row) if row <= n => source,
            (Occupant::Pool(b) | Occupant::Ancilla(b), row) if row == n => Occupant::Ancilla(b),
            _ => {
                return Err(GridError::IllegalPlacement {
                    occupant: source,
                    to,
                })
            }
        };
        self.set(from, Occupant::Empty);
        self.set(to, landed);
        self.log.push(TeleportRecord { from, to, phase });
        Ok(())
    }

    /// Re-reads the grid after a quarter turn: a register on the bottom row
    /// reads as the leftmost column afterwards, and the next edge's ancilla
    /// row becomes row `N`.
    pub fn rotate_register(&self) -> Result<Self, GridError> {
        let mut next = self.clone();
        next.rotate_in_place()?;
        Ok(next)
    }

    pub fn rotate_in_place(&mut self) -> Result<(), GridError> {
        if !self.register_on_edge() {
            return Err(GridError::NotOnEdge);
        }
        self.orientation = (self.orientation + 1) % 4;
        Ok(())
    }

    fn register_on_edge(&self) -> bool {
        let n = self.layout.side();
        let register = self.register();
        if register.iter().any(|(_, p)| p.row >= n) {
            return false;
        }
        if self.frame.values().filter(|o| matches!(o, Occupant::Working(_))).count() != register.len() {
            return false;
        }
        let all = |f: &dyn Fn(&GridPos) -> bool| register.iter().all(|(_, p)| f(p));
        all(&|p| p.col == 0) || all(&|p| p.row == n - 1) || all(&|p| p.col == n - 1) || all(&|p| p.row == 0)
    }

    /// Restores each listed cell to its prepared state: ancilla-row controls
    /// are released and emptied pool cells refilled. Returns the released
    /// ancilla occupants with their positions.
    pub fn reinitialize(&mut self, cells: &[GridPos]) -> Result<Vec<(GridPos, Basis)>, GridError> {
        let n = self.layout.side();
        let mut released = Vec::new();
        for &pos in cells {
            let occupant = self.occupant(pos)?;
            match (occupant, pos.row) {
                (Occupant::Ancilla(b), row) if row == n => {
                    released.push((pos, b));
                    self.set(pos, Occupant::Empty);
                }
                (Occupant::Empty, row) if row > n => {
                    let basis = if row == self.layout.pool_row(Basis::Zero) {
                        Basis::Zero
                    } else {
                        Basis::One
                    };
                    self.set(pos, Occupant::Pool(basis));
                }
                _ => return Err(GridError::BadReset { pos, occupant }),
            }
        }
        Ok(released)
    }

    /// The prepared-qubit part of the grid: ancilla-row controls and pools.
    pub fn ancilla_configuration(&self) -> AncillaConfiguration {
        let ancillas = self
            .frame
            .iter()
            .filter_map(|(p, o)| match o {
                Occupant::Ancilla(b) => Some((*p, *b)),
                _ => None,
            })
            .collect();
        AncillaConfiguration {
            ancillas,
            pools: self.pools.clone(),
        }
    }

    /// Occupant counts `(working, prepared |0⟩, prepared |1⟩)`, with pool and
    /// ancilla-row qubits counted together.
    pub fn census(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for o in self.frame.values().chain(self.pools.iter()) {
            match o {
                Occupant::Working(_) => counts.0 += 1,
                Occupant::Ancilla(Basis::Zero) | Occupant::Pool(Basis::Zero) => counts.1 += 1,
                Occupant::Ancilla(Basis::One) | Occupant::Pool(Basis::One) => counts.2 += 1,
                Occupant::Empty => {}
            }
        }
        counts
    }

    /// Text snapshot: one line per logical row `0..=N+2`, one character per
    /// cell. Working qubits print as base-36 digits (upper case letters),
    /// ancilla-row controls as `a`, pool cells as `0`/`1`, empty cells as
    /// `.`.
    pub fn render(&self) -> String {
        let n = self.layout.side();
        let mut out = String::with_capacity((n + 1) * (n + 3));
        for row in 0..=n + 2 {
            for col in 0..n {
                let occupant = self.occupant(GridPos::new(row, col)).expect("in bounds");
                out.push(match occupant {
                    Occupant::Working(q) => std::char::from_digit(q as u32, 36)
                        .map(|c| c.to_ascii_uppercase())
                        .unwrap_or('#'),
                    Occupant::Ancilla(_) => 'a',
                    Occupant::Pool(Basis::Zero) => '0',
                    Occupant::Pool(Basis::One) => '1',
                    Occupant::Empty => '.',
                });
            }
            out.push('\n');
        }
        out
    }
}

/// True iff every pair is axis-adjacent (Manhattan distance 1).
pub fn adjacency_check<'a, I>(pairs: I) -> bool
where
    I: IntoIterator<Item = &'a (GridPos, GridPos)>,
{
    pairs.into_iter().all(|(a, b)| a.manhattan(b) == 1)
}
