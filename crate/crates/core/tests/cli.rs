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

use std::fs;
use std::path::Path;

use qcagrid::cli::{run, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE};
use qcagrid::sim::StateVector;
use qcagrid::{compile, execute_schedule, parse_circuit, qft_circuit, PhaseKind, Schedule};

fn qcagrid(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qcagrid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn qft_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft5.json");
    assert_eq!(qcagrid(&["qft", "5", "-o", &circuit]).0, EXIT_OK);
    let (code, out, _) = qcagrid(&["verify", &circuit, "--trials", "5", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    let fidelity: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("min fidelity: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(fidelity >= 1.0 - 1e-9);
}

#[test]
fn stats_of_qft5() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft5.json");
    let schedule = path(dir.path(), "qft5.schedule.json");
    qcagrid(&["qft", "5", "-o", &circuit]);
    assert_eq!(qcagrid(&["compile", &circuit, "-o", &schedule]).0, EXIT_OK);
    let (code, out, _) = qcagrid(&["stats", &schedule]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("total_grid_qubits: 55"), "{out}");
    assert!(out.contains("broadcast_phase_count: 15"), "{out}");
}

#[test]
fn malformed_circuit_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    fs::write(&bad, "{\"qubits\": 2,\n \"gates\": [}").unwrap();
    let (code, _, err) = qcagrid(&["compile", &bad]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2"), "{err}");

    fs::write(&bad, r#"{"qubits": 2, "gates": [{"name": "H", "target": 0}, {"name": "H", "target": 5}]}"#).unwrap();
    let (code, _, err) = qcagrid(&["compile", &bad]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("gate 1"), "{err}");
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(qcagrid(&["stats", "/nonexistent/schedule.json"]).0, EXIT_INPUT);
}

#[test]
fn usage_errors() {
    assert_eq!(qcagrid(&[]).0, EXIT_USAGE);
    assert_eq!(qcagrid(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(qcagrid(&["verify", "x.json", "--trials", "0"]).0, EXIT_USAGE);
    let (code, out, _) = qcagrid(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
    assert_eq!(qcagrid(&["qft", "0"]).0, EXIT_USAGE);
}

#[test]
fn simulate_matches_in_process_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft3.json");
    let schedule = path(dir.path(), "qft3.schedule.json");
    qcagrid(&["qft", "3", "-o", &circuit]);
    qcagrid(&["compile", &circuit, "-o", &schedule]);
    let (code, out, _) = qcagrid(&["simulate", &schedule, "--input", "101"]);
    assert_eq!(code, EXIT_OK);

    let direct = compile(&qft_circuit(3).unwrap()).unwrap();
    let (state, _) = execute_schedule(&direct, &StateVector::from_basis_string("101").unwrap()).unwrap();
    assert_eq!(out, state.to_string());
}

#[test]
fn simulate_rejects_wrong_input_width() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft3.json");
    let schedule = path(dir.path(), "qft3.schedule.json");
    qcagrid(&["qft", "3", "-o", &circuit]);
    qcagrid(&["compile", &circuit, "-o", &schedule]);
    assert_eq!(qcagrid(&["simulate", &schedule, "--input", "10"]).0, EXIT_INPUT);
    assert_eq!(qcagrid(&["simulate", &schedule, "--input", "1x1"]).0, EXIT_INPUT);
}

#[test]
fn trace_snapshots_every_phase() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft5.json");
    let schedule = path(dir.path(), "qft5.schedule.json");
    qcagrid(&["qft", "5", "-o", &circuit]);
    qcagrid(&["compile", &circuit, "-o", &schedule]);
    let (code, out, _) = qcagrid(&["trace", &schedule]);
    assert_eq!(code, EXIT_OK);
    let headers = out.lines().filter(|l| l.starts_with("step ")).count();
    // 5 one-qubit steps of 6 phases, 10 two-qubit steps of 7
    assert_eq!(headers, 5 * 6 + 10 * 7);
    // register in the leftmost column before the first step
    assert!(out.starts_with("initial\n0....\n1....\n2....\n3....\n4....\n.....\n00000\n11111\n"));
    let (_, again, _) = qcagrid(&["trace", &schedule]);
    assert_eq!(out, again);
}

#[test]
fn compile_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let circuit = path(dir.path(), "qft4.json");
    qcagrid(&["qft", "4", "-o", &circuit]);
    let (_, a, _) = qcagrid(&["compile", &circuit]);
    let (_, b, _) = qcagrid(&["compile", &circuit]);
    assert_eq!(a, b);
    let parsed = parse_circuit(&fs::read_to_string(&circuit).unwrap()).unwrap();
    assert_eq!(a, compile(&parsed).unwrap().to_json());
}

#[test]
fn stats_flags_a_schedule_without_its_broadcast() {
    let dir = tempfile::tempdir().unwrap();
    let good = compile(&qft_circuit(2).unwrap()).unwrap();
    let mut steps = good.steps().to_vec();
    steps[0].phases.retain(|p| p.kind() != PhaseKind::Broadcast);
    let broken = Schedule::new(good.layout(), steps).unwrap();
    let file = path(dir.path(), "broken.json");
    fs::write(&file, broken.to_json()).unwrap();
    let (code, _, err) = qcagrid(&["stats", &file]);
    assert_eq!(code, EXIT_INVARIANT);
    assert!(err.contains("0 broadcast phases"), "{err}");
}
