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

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcagrid::circuit::random::random_unitary;
use qcagrid::sim::{trial_state, verify_with};
use qcagrid::{compile, qft_circuit, GateSpec, Strategy};

fn verification_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_qft6_64_trials");
    let circuit = qft_circuit(6).unwrap();
    let schedule = compile(&circuit).unwrap();
    for &strategy in Strategy::available() {
        group.bench_function(BenchmarkId::from_parameter(strategy.name()), |b| {
            b.iter(|| verify_with(&circuit, &schedule, 64, 1, strategy).unwrap())
        });
    }
    group.finish();
}

fn gate_application(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_cu_20_qubits");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gate = GateSpec::custom(2, random_unitary(&mut rng)).unwrap();
    let start = trial_state(20, 5, 0);
    for &strategy in Strategy::available() {
        group.bench_function(BenchmarkId::from_parameter(strategy.name()), |b| {
            let mut state = start.clone();
            b.iter(|| state.apply_gate_with(&gate, &[17, 3], strategy).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verification_trials, gate_application);
criterion_main!(benches);
