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

//! Sequential and data-parallel execution strategies.

/// How independent work items are executed. `Parallel` is available with the
/// `parallel` feature and is then the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Strategy {
    /// Every strategy compiled into this build.
    pub fn available() -> &'static [Strategy] {
        #[cfg(feature = "parallel")]
        {
            &[Strategy::Sequential, Strategy::Parallel]
        }
        #[cfg(not(feature = "parallel"))]
        {
            &[Strategy::Sequential]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Strategy::Parallel => "parallel",
        }
    }

    /// `f(0), ..., f(count - 1)` in index order.
    pub fn map_indices<T, F>(self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Strategy::Sequential => (0..count).map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                (0..count).into_par_iter().map(f).collect()
            }
        }
    }

    /// Calls `f(chunk_index, chunk)` on consecutive `size`-element chunks.
    pub fn for_each_chunk<T, F>(self, data: &mut [T], size: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        match self {
            Strategy::Sequential => data.chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c)),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                data.par_chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c))
            }
        }
    }
}
