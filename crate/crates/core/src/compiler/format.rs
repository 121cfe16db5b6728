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

//! JSON schedule files.
//!
//! `{"layout": {"n": N}, "steps": [{"arity": 1, "applications": 1, "phases":
//! [{"kind": "horizontal-teleport", "moves": [{"from": [r, c], "to": [r,
//! c]}]}, ..., {"kind": "broadcast", "gate": {...}, "pairs": [[[r, c], [r,
//! c]]]}, ...]}]}`. The initial placement is implied by the layout.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Schedule, Step};
use crate::grid::{GridError, GridLayout};

#[derive(Debug, Error)]
pub enum ScheduleFormatError {
    #[error("malformed schedule file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("schedule layout is invalid: {0}")]
    Layout(#[from] GridError),
    #[error("schedule layout must have a positive side")]
    EmptyLayout,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    layout: GridLayout,
    steps: Vec<Step>,
}

impl Schedule {
    /// Pretty-printed JSON; identical schedules give identical bytes.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Borrowed<'a> {
            layout: GridLayout,
            steps: &'a [Step],
        }
        let file = Borrowed {
            layout: self.layout,
            steps: &self.steps,
        };
        serde_json::to_string_pretty(&file).expect("schedules always serialize")
    }

    pub fn from_json(text: &str) -> Result<Schedule, ScheduleFormatError> {
        let file: ScheduleFile = serde_json::from_str(text)?;
        if file.layout.side() == 0 {
            return Err(ScheduleFormatError::EmptyLayout);
        }
        Ok(Schedule::new(file.layout, file.steps)?)
    }
}
