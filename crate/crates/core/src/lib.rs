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

//! Single-qubit gate synthesis over finite universal gate sets, simulators
//! for the PartialMOD and Equality quantum streaming algorithms, and the
//! classical-bit accounting that compares them with classical baselines.
//!
//! Modules:
//! - [`su2`]: 2×2 unitaries, rotations, phase-invariant distances.
//! - [`synthesis`]: ε-nets, group-commutator recursion, segment counting.
//! - [`partialmod`]: one-qubit PartialMOD simulator.
//! - [`equality`]: fingerprinting simulator and fingerprint-set search.
//! - [`accounting`]: program-bit costs and space reports.
//!
//! Sweeps run on rayon when the `parallel` feature is enabled (the default);
//! see [`exec`].

pub mod accounting;
pub mod equality;
pub mod error;
pub mod exec;
pub mod partialmod;
pub mod rng;
pub mod su2;
pub mod synthesis;

pub use error::{Error, Result};
