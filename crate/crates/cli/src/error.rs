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

#[derive(Error, Debug)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("resource cap: {0}")]
    Resource(String),

    #[error("acceptance check failed: {}", .0.join("; "))]
    Acceptance(Vec<String>),

    #[error(transparent)]
    Core(qsk_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<qsk_core::Error> for CliError {
    fn from(e: qsk_core::Error) -> Self {
        match e {
            qsk_core::Error::Domain(m) => CliError::Config(m),
            qsk_core::Error::Resource(m) => CliError::Resource(m),
            qsk_core::Error::Io(io) => CliError::Io(io),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// 0 success, 1 other failure, 2 config error, 3 resource cap,
    /// 4 acceptance-assertion failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Acceptance(_) => 4,
            CliError::Core(qsk_core::Error::Unreachable { .. }) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
