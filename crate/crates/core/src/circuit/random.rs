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

//! Random gates and circuits for verification sweeps and benchmarks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Circuit, GateApplication, GateSpec, Matrix2};

/// Haar-random element of U(2).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let mut gaussian = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let (mut a0, mut a1) = (gaussian(), gaussian());
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    a0 /= norm;
    a1 /= norm;
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    Matrix2::new([[a0, -phase * a1.conj()], [a1, phase * a0.conj()]])
}

/// A random circuit over `qubits` qubits with `len` gates drawn from
/// {H, T, X, CP(θ), CNOT, U, CU}. Two-qubit gates are only drawn when the
/// register has at least two qubits.
pub fn random_circuit<R: Rng + ?Sized>(qubits: usize, len: usize, rng: &mut R) -> Circuit {
    let mut circuit = Circuit::empty(qubits).expect("random circuits need a qubit");
    let choices = if qubits >= 2 { 7 } else { 4 };
    for _ in 0..len {
        let target = rng.random_range(0..qubits);
        let app = match rng.random_range(0..choices) {
            0 => GateApplication::single(GateSpec::h(), target),
            1 => GateApplication::single(GateSpec::t(), target),
            2 => GateApplication::single(GateSpec::x(), target),
            3 => GateApplication::single(
                GateSpec::custom(1, random_unitary(rng)).expect("Haar sample is unitary"),
                target,
            ),
            kind => {
                let mut control = rng.random_range(0..qubits - 1);
                if control >= target {
                    control += 1;
                }
                let gate = match kind {
                    4 => GateSpec::cp(rng.random_range(0.0..2.0 * PI)),
                    5 => GateSpec::cnot(),
                    _ => GateSpec::custom(2, random_unitary(rng)).expect("Haar sample is unitary"),
                };
                GateApplication::controlled(gate, control, target)
            }
        };
        circuit.push(app).expect("indices drawn in range");
    }
    circuit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GATE_TOLERANCE;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(random_unitary(&mut rng).unitarity_deviation() <= GATE_TOLERANCE);
        }
    }

    #[test]
    fn random_circuits_are_valid_and_seeded() {
        let a = random_circuit(4, 12, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_circuit(4, 12, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
        let single = random_circuit(1, 30, &mut ChaCha8Rng::seed_from_u64(3));
        assert!(single.gates().iter().all(|g| g.gate.arity() == 1));
    }
}
