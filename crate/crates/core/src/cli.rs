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

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 verification failure, 4 internal invariant violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::circuit::{parse_circuit, qft_circuit, serialize_circuit, Circuit};
use crate::compiler::{compile, CostReport, Schedule};
use crate::exec::Strategy;
use crate::sim::{execute_observed, verify_with, StateVector, FIDELITY_THRESHOLD};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qcagrid", version, about = "Broadcast-gate grid compiler and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a circuit file into a schedule.
    Compile {
        circuit: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a schedule and print the final working-register state.
    Simulate {
        schedule: PathBuf,
        /// Basis-state input, qubit 0 leftmost ("100" sets qubit 0).
        /// Defaults to all zeros.
        #[arg(long)]
        input: Option<String>,
        /// Print a grid snapshot after every phase.
        #[arg(long)]
        trace: bool,
    },
    /// Compile a circuit and compare it with direct simulation on random
    /// inputs; prints the minimum fidelity.
    Verify {
        circuit: PathBuf,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "QCA_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Print the cost report of a schedule.
    Stats { schedule: PathBuf },
    /// Write the n-qubit QFT circuit.
    Qft {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a grid snapshot after every phase of a schedule.
    Trace { schedule: PathBuf },
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format_args!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    parse_circuit(&read(path)?).map_err(|e| fail(EXIT_INPUT, format_args!("{}: {e}", path.display())))
}

fn load_schedule(path: &Path) -> Result<Schedule, Failure> {
    Schedule::from_json(&read(path)?).map_err(|e| fail(EXIT_INPUT, format_args!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| fail(EXIT_INPUT, format_args!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| fail(EXIT_INPUT, e)),
    }
}

fn io(e: std::io::Error) -> Failure {
    fail(EXIT_INPUT, e)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Compile { circuit, output } => {
            let schedule = compile(&load_circuit(&circuit)?).map_err(|e| fail(EXIT_INVARIANT, e))?;
            emit(&schedule.to_json(), output.as_deref(), out)?;
        }
        Command::Simulate { schedule, input, trace } => {
            let schedule = load_schedule(&schedule)?;
            let state = match input {
                Some(bits) => StateVector::from_basis_string(&bits).map_err(|e| fail(EXIT_INPUT, e))?,
                None => StateVector::zero(schedule.register()),
            };
            if state.qubits() != schedule.register() {
                return Err(fail(
                    EXIT_INPUT,
                    format_args!("input has {} qubits, schedule needs {}", state.qubits(), schedule.register()),
                ));
            }
            let mut snapshots = String::new();
            let run = execute_observed(&schedule, &state, |event| {
                if trace {
                    snapshots.push_str(&format!("step {} {}\n{}\n", event.step, event.phase.kind(), event.grid.render()));
                }
            })
            .map_err(|e| fail(EXIT_INVARIANT, e))?;
            out.write_all(snapshots.as_bytes()).map_err(io)?;
            write!(out, "{}", run.state).map_err(io)?;
        }
        Command::Verify { circuit, trials, seed } => {
            let circuit = load_circuit(&circuit)?;
            let schedule = compile(&circuit).map_err(|e| fail(EXIT_INVARIANT, e))?;
            let v = verify_with(&circuit, &schedule, trials as usize, seed, Strategy::default())
                .map_err(|e| fail(EXIT_INVARIANT, e))?;
            writeln!(out, "trials: {}", v.trials).map_err(io)?;
            writeln!(out, "seed: {seed}").map_err(io)?;
            writeln!(out, "min ancilla purity: {:.15}", v.min_ancilla_purity).map_err(io)?;
            writeln!(out, "min fidelity: {:.15}", v.min_fidelity).map_err(io)?;
            if !v.passed() {
                return Err(fail(
                    EXIT_VERIFY,
                    format_args!("fidelity {:.15} below {FIDELITY_THRESHOLD}", v.min_fidelity),
                ));
            }
        }
        Command::Stats { schedule } => {
            let report = CostReport::of(&load_schedule(&schedule)?);
            write!(out, "{report}").map_err(io)?;
            let violations = report.violations();
            if !violations.is_empty() {
                return Err(fail(EXIT_INVARIANT, violations.join("; ")));
            }
        }
        Command::Qft { n, output } => {
            let circuit = qft_circuit(n).map_err(|e| fail(EXIT_USAGE, e))?;
            emit(&serialize_circuit(&circuit), output.as_deref(), out)?;
        }
        Command::Trace { schedule } => {
            let schedule = load_schedule(&schedule)?;
            let mut text = format!("initial\n{}\n", schedule.initial_placement().render());
            execute_observed(&schedule, &StateVector::zero(schedule.register()), |event| {
                text.push_str(&format!("step {} {}\n{}\n", event.step, event.phase.kind(), event.grid.render()));
            })
            .map_err(|e| fail(EXIT_INVARIANT, e))?;
            out.write_all(text.as_bytes()).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}
