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

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{GateSpec, Matrix2, QubitId};
use crate::exec::Strategy;

/// Below this many amplitudes the parallel strategy falls back to a plain
/// loop; the fork/join overhead dominates otherwise.
pub const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Tolerance of the norm invariant.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("qubit {qubit} out of range for a {qubits}-qubit state")]
    OutOfRange { qubit: usize, qubits: usize },
    #[error("qubit {0} used twice")]
    DuplicateTarget(usize),
    #[error("gate {gate} needs {arity} targets, got {found}")]
    TargetCount { gate: String, arity: u8, found: usize },
    #[error("broadcast gate {0} is not a controlled gate")]
    NotControlled(String),
    #[error("dimension {0} is not a power of two")]
    Dimension(usize),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("a chain of cells needs an even qubit count, got {0}")]
    OddCellCount(usize),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("basis string {0:?} must contain only 0 and 1")]
    BasisString(String),
}

/// Amplitudes over `qubits` live qubits; bit `k` of an index is qubit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// Printable amplitude listing.
#[derive(Debug, Clone, Serialize)]
pub struct StateDump {
    pub qubit_order: &'static str,
    pub qubits: usize,
    pub norm: f64,
    /// `(basis index, re, im)` for amplitudes above 1e-12 in magnitude.
    pub amplitudes: Vec<(usize, f64, f64)>,
}

impl StateVector {
    /// |0…0⟩ over `qubits` qubits.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { qubits, amplitudes }
    }

    /// Parses a big-endian bit string: the leftmost character is qubit 0.
    pub fn from_basis_string(bits: &str) -> Result<Self, StateError> {
        let mut index = 0;
        for (q, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => index |= 1 << q,
                _ => return Err(StateError::BasisString(bits.to_string())),
            }
        }
        if bits.is_empty() {
            return Err(StateError::BasisString(bits.to_string()));
        }
        Ok(Self::basis(bits.chars().count(), index))
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, StateError> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(StateError::Dimension(len));
        }
        let state = StateVector {
            qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(StateError::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Normalized i.i.d. complex Gaussian amplitudes.
    pub fn random<R: Rng + ?Sized>(qubits: usize, rng: &mut R) -> Self {
        let mut amplitudes: Vec<Complex64> = (0..1usize << qubits)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        StateVector { qubits, amplitudes }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check(&self, qubit: usize) -> Result<(), StateError> {
        if qubit >= self.qubits {
            return Err(StateError::OutOfRange {
                qubit,
                qubits: self.qubits,
            });
        }
        Ok(())
    }

    /// Applies `gate` to `targets`: `[target]` for one-qubit gates,
    /// `[control, target]` for controlled gates.
    pub fn apply_gate(&mut self, gate: &GateSpec, targets: &[QubitId]) -> Result<(), StateError> {
        self.apply_gate_with(gate, targets, Strategy::default())
    }

    pub fn apply_gate_with(
        &mut self,
        gate: &GateSpec,
        targets: &[QubitId],
        strategy: Strategy,
    ) -> Result<(), StateError> {
        if targets.len() != gate.arity() as usize {
            return Err(StateError::TargetCount {
                gate: gate.label().to_string(),
                arity: gate.arity(),
                found: targets.len(),
            });
        }
        for &q in targets {
            self.check(q)?;
        }
        match *targets {
            [t] => self.apply_controlled(gate.unitary(), None, t, strategy),
            [c, t] if c == t => return Err(StateError::DuplicateTarget(c)),
            [c, t] => self.apply_controlled(gate.unitary(), Some(c), t, strategy),
            _ => unreachable!("arity is 1 or 2"),
        }
        Ok(())
    }

    fn apply_controlled(&mut self, m: &Matrix2, control: Option<usize>, target: usize, strategy: Strategy) {
        let half = 1usize << target;
        let control_mask = control.map_or(0, |c| 1usize << c);
        let m = *m;
        let kernel = move |chunk_index: usize, chunk: &mut [Complex64]| {
            let base = chunk_index * 2 * half;
            let (lo, hi) = chunk.split_at_mut(half);
            for (j, (a0, a1)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                if (base + j) & control_mask == control_mask {
                    (*a0, *a1) = m.apply(*a0, *a1);
                }
            }
        };
        let strategy = if self.amplitudes.len() < PARALLEL_THRESHOLD {
            Strategy::Sequential
        } else {
            strategy
        };
        strategy.for_each_chunk(&mut self.amplitudes, 2 * half, kernel);
    }

    /// Applies the controlled gate to every `(control, data)` pair. The pairs
    /// have disjoint supports so the order does not matter.
    pub fn apply_broadcast(&mut self, gate: &GateSpec, pairs: &[(QubitId, QubitId)]) -> Result<(), StateError> {
        if gate.arity() != 2 {
            return Err(StateError::NotControlled(gate.label().to_string()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(c, t) in pairs {
            for q in [c, t] {
                self.check(q)?;
                if !seen.insert(q) {
                    return Err(StateError::DuplicateTarget(q));
                }
            }
        }
        for &(c, t) in pairs {
            self.apply_gate(gate, &[c, t])?;
        }
        Ok(())
    }

    /// Probability that `qubit` reads 1.
    pub fn probability_one(&self, qubit: usize) -> Result<f64, StateError> {
        self.check(qubit)?;
        let mask = 1 << qubit;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Purity `tr ρ²` of the one-qubit reduced state of `qubit`.
    pub fn reduced_purity(&self, qubit: usize) -> Result<f64, StateError> {
        self.check(qubit)?;
        let mask = 1 << qubit;
        let (mut p0, mut p1, mut coherence) = (0.0, 0.0, Complex64::new(0.0, 0.0));
        for (i, a) in self.amplitudes.iter().enumerate().filter(|(i, _)| i & mask == 0) {
            let b = self.amplitudes[i | mask];
            p0 += a.norm_sqr();
            p1 += b.norm_sqr();
            coherence += a * b.conj();
        }
        Ok(p0 * p0 + p1 * p1 + 2.0 * coherence.norm_sqr())
    }

    /// Appends a qubit in state |bit⟩ as the new most significant qubit and
    /// returns its index.
    pub fn push_qubit(&mut self, bit: usize) -> usize {
        let len = self.amplitudes.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut next = vec![zero; 2 * len];
        next[bit * len..(bit + 1) * len].copy_from_slice(&self.amplitudes);
        self.amplitudes = next;
        self.qubits += 1;
        self.qubits - 1
    }

    /// Projects `qubit` onto |bit⟩ and removes it; qubits above it shift down
    /// by one. Returns the discarded probability.
    pub fn remove_qubit(&mut self, qubit: usize, bit: usize) -> Result<f64, StateError> {
        self.check(qubit)?;
        let mask = 1usize << qubit;
        let low = mask - 1;
        let kept: Vec<Complex64> = (0..self.amplitudes.len() / 2)
            .map(|i| {
                let full = ((i & !low) << 1) | (i & low) | (bit * mask);
                self.amplitudes[full]
            })
            .collect();
        let norm: f64 = kept.iter().map(|a| a.norm_sqr()).sum();
        self.amplitudes = kept;
        self.qubits -= 1;
        if norm > 0.0 {
            let scale = norm.sqrt();
            self.amplitudes.iter_mut().for_each(|a| *a /= scale);
        }
        Ok(1.0 - norm)
    }

    /// Non-negligible amplitudes with the norm.
    pub fn dump(&self) -> StateDump {
        StateDump {
            qubit_order: "index bit k is qubit k (qubit 0 least significant)",
            qubits: self.qubits,
            norm: self.norm_sqr().sqrt(),
            amplitudes: self
                .amplitudes
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > 1e-12)
                .map(|(i, a)| (i, a.re, a.im))
                .collect(),
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dump = self.dump();
        writeln!(f, "# {} qubits, {}", dump.qubits, dump.qubit_order)?;
        writeln!(f, "# norm {:.15}", dump.norm)?;
        writeln!(f, "# index  bits (qubit 0 first)  amplitude")?;
        for (i, re, im) in dump.amplitudes {
            let bits: String = (0..self.qubits).map(|q| if i >> q & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{i:>7}  {bits:<w$}  {re:+.12} {im:+.12}i", w = self.qubits.max(20))?;
        }
        Ok(())
    }
}

/// `|⟨a|b⟩|`; exactly 1 when the vectors are identical.
pub fn fidelity(a: &StateVector, b: &StateVector) -> f64 {
    if a.amplitudes == b.amplitudes {
        return 1.0;
    }
    a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm()
}
