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

//! Seeded randomness.
//!
//! Every random draw flows from one 64-bit seed. Independent streams are
//! derived with [`split_seed`], a SplitMix64 finaliser applied to
//! `seed ⊕ stream·φ ⊕ counter·φ²`, so each command and each attempt gets its
//! own ChaCha8 generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::su2::Unitary2;

pub type Rng = ChaCha8Rng;

/// Stream tags used by the library and the CLI.
pub mod stream {
    pub const HAAR_PROBE: u64 = 1;
    pub const HAAR_TARGETS: u64 = 2;
    pub const PLACEMENT: u64 = 3;
    pub const FINGERPRINT: u64 = 4;
    pub const PERTURBATION: u64 = 5;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn split_seed(seed: u64, stream: u64, counter: u64) -> u64 {
    splitmix64(
        seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ splitmix64(counter.wrapping_mul(0xD6E8_FEB8_6659_FD93)),
    )
}

pub fn rng_for(seed: u64, stream: u64, counter: u64) -> Rng {
    Rng::seed_from_u64(split_seed(seed, stream, counter))
}

/// Haar-random SU(2) element: a uniformly distributed unit quaternion.
pub fn haar_unitary<R: rand::Rng + ?Sized>(rng: &mut R) -> Unitary2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        if let Ok(u) = Unitary2::from_quaternion(q) {
            return u;
        }
    }
}

/// `count` Haar-random targets drawn from one derived stream.
pub fn haar_sample(seed: u64, stream: u64, count: usize) -> Vec<Unitary2> {
    let mut rng = rng_for(seed, stream, 0);
    (0..count).map(|_| haar_unitary(&mut rng)).collect()
}
