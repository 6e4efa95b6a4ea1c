// Copyright 2026 The qsk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration or allocation guard was tripped.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Synthesis could not meet the requested accuracy within the depth cap.
    #[error("accuracy {requested:e} unreachable by depth {depth}; best achieved {best_error:e}")]
    Unreachable {
        requested: f64,
        depth: usize,
        best_error: f64,
        best: Box<crate::synthesis::SynthesisResult>,
    },

    /// Fingerprint search ran out of attempts.
    #[error(
        "no fingerprint set found in {attempts} attempts; best max deviation {best_max_deviation}"
    )]
    SearchExhausted {
        attempts: usize,
        best_max_deviation: f64,
    },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
