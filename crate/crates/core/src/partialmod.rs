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

//! One-qubit PartialMOD streaming algorithm.
//!
//! The qubit starts at `|0⟩` and every incoming 1-bit applies
//! `R(π/(2p))`. After `v·p` ones the state is `(cos(vπ/2), −sin(vπ/2))ᵀ`, so a
//! computational-basis measurement reads out `v mod 2`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;

use crate::error::{domain, Result};
use crate::rng::{rng_for, stream};
use crate::su2::{rotation_y, QubitState, Unitary2};
use crate::synthesis::{GateSet, GateWord};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitStream(Vec<bool>);

impl BitStream {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitStream(bits)
    }

    /// `length` bits with exactly `v·p` ones at seeded random positions.
    pub fn generate(p: u64, v: u64, length: usize, seed: u64) -> Result<Self> {
        let ones = p
            .checked_mul(v)
            .filter(|&n| n as usize <= length)
            .ok_or_else(|| domain(format!("cannot place {v}·{p} ones in {length} bits")))?;
        let mut rng = rng_for(seed, stream::PLACEMENT, 0);
        let mut bits = vec![false; length];
        for i in index::sample(&mut rng, length, ones as usize) {
            bits[i] = true;
        }
        Ok(BitStream(bits))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `#₁`.
    pub fn ones(&self) -> u64 {
        self.0.iter().filter(|&&b| b).count() as u64
    }
}

impl FromStr for BitStream {
    type Err = crate::error::Error;

    /// Accepts `'0'`/`'1'` characters; ASCII whitespace is skipped.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_ascii_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(crate::error::Error::Format(format!(
                    "unexpected character {other:?} in bit stream"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitStream)
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialModInstance {
    p: u64,
    stream: BitStream,
    v: u64,
}

impl PartialModInstance {
    pub fn new(p: u64, stream: BitStream) -> Result<Self> {
        if p == 0 {
            return Err(domain("p must be positive"));
        }
        let ones = stream.ones();
        if !ones.is_multiple_of(p) {
            return Err(domain(format!("#1 = {ones} is not a multiple of p = {p}")));
        }
        Ok(PartialModInstance {
            p,
            v: ones / p,
            stream,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn stream(&self) -> &BitStream {
        &self.stream
    }

    /// Target rotation angle `π/(2p)`.
    pub fn theta(&self) -> f64 {
        FRAC_PI_2 / self.p as f64
    }

    pub fn expected_parity(&self) -> u8 {
        (self.v % 2) as u8
    }
}

/// Exact Born-rule distribution of the final measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeDistribution {
    pub p0: f64,
    pub p1: f64,
}

impl OutcomeDistribution {
    pub fn probability(&self, outcome: u8) -> f64 {
        if outcome == 0 {
            self.p0
        } else {
            self.p1
        }
    }

    pub fn most_likely(&self) -> u8 {
        u8::from(self.p1 > self.p0)
    }

    /// Seeded single-shot sample, for demonstrations.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u8 {
        u8::from(rng.random::<f64>() * (self.p0 + self.p1) >= self.p0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityOutcome {
    pub parity: u8,
    /// Probability of observing `parity`.
    pub probability: f64,
}

fn evolve(stream: &BitStream, step: &Unitary2) -> QubitState {
    stream
        .bits()
        .iter()
        .filter(|&&b| b)
        .fold(QubitState::ZERO, |s, _| step.apply(&s))
}

fn distribution(state: &QubitState) -> OutcomeDistribution {
    let [p0, p1] = state.probabilities();
    OutcomeDistribution { p0, p1 }
}

pub fn run_exact(inst: &PartialModInstance) -> ParityOutcome {
    let dist = distribution(&evolve(&inst.stream, &rotation_y(inst.theta())));
    let parity = dist.most_likely();
    ParityOutcome {
        parity,
        probability: dist.probability(parity),
    }
}

/// `2√δ/(v·p)`: the operator accuracy the analysis attaches to error budget δ.
pub fn required_accuracy(v: u64, p: u64, delta: f64) -> Result<f64> {
    if v == 0 {
        return Err(domain("v = 0 imposes no accuracy constraint"));
    }
    if p == 0 {
        return Err(domain("p must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain("delta must lie in (0, 1)"));
    }
    Ok(2.0 * delta.sqrt() / (v as f64 * p as f64))
}

/// Probability of the wrong parity when every step rotates by
/// `π/(2p) + eps_p` about the same axis.
pub fn run_perturbed(inst: &PartialModInstance, eps_p: f64) -> f64 {
    let dist = distribution(&evolve(&inst.stream, &rotation_y(inst.theta() + eps_p)));
    1.0 - dist.probability(inst.expected_parity())
}

/// `sin²(v·p·ε_p)`.
pub fn perturbed_wrong_probability(v: u64, p: u64, eps_p: f64) -> f64 {
    ((v * p) as f64 * eps_p).sin().powi(2)
}

/// Runs the algorithm with the word's unitary standing in for `R(π/(2p))`.
pub fn run_synthesized(
    inst: &PartialModInstance,
    gate_set: &GateSet,
    word: &GateWord,
) -> Result<OutcomeDistribution> {
    let step = gate_set.evaluate(word)?;
    Ok(distribution(&evolve(&inst.stream, &step)))
}

/// `min(1, (v·p·ε)²)`: wrong-outcome bound for per-step error `ε` in any direction.
pub fn accumulation_bound(v: u64, p: u64, eps_word: f64) -> f64 {
    ((v * p) as f64 * eps_word).powi(2).min(1.0)
}
