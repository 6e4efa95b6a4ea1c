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

use std::collections::{HashMap, HashSet};

use super::GateSet;
use crate::error::{domain, Error, Result};
use crate::exec;
use crate::rng::{haar_sample, stream};
use crate::su2::Unitary2;

pub const MAX_NET_WORD_LENGTH: usize = 16;

/// Guard on the number of distinct operators held during enumeration.
pub const MAX_ENUMERATED: usize = 4_000_000;

/// Size of the Haar probe sample used to measure the covering radius.
pub const PROBE_COUNT: usize = 10_000;

const PROBE_SEED: u64 = 0x0051_4b4e_4554;

/// Grid used to recognise exactly equal operators during enumeration.
const EXACT_QUANTUM: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct NetEntry {
    pub symbols: Vec<u8>,
    pub unitary: Unitary2,
    pub quat: [f64; 4],
}

impl NetEntry {
    pub(crate) fn new(symbols: Vec<u8>, unitary: Unitary2) -> Self {
        let quat = unitary.quaternion();
        NetEntry {
            symbols,
            unitary,
            quat,
        }
    }
}

/// Deduplicated words of bounded length covering SU(2) to a measured radius.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonNet {
    pub(crate) gate_set: GateSet,
    pub(crate) max_word_length: usize,
    pub(crate) entries: Vec<NetEntry>,
    pub(crate) resolution: f64,
    pub(crate) dedup_threshold: f64,
    pub(crate) distinct_operators: usize,
}

impl EpsilonNet {
    pub fn gate_set(&self) -> &GateSet {
        &self.gate_set
    }

    /// `L₀`.
    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `ε₀`: covering radius over the fixed probe sample.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn dedup_threshold(&self) -> f64 {
        self.dedup_threshold
    }

    /// Number of projectively distinct operators realised by words of
    /// length `≤ L₀`, before coarse deduplication.
    pub fn distinct_operators(&self) -> usize {
        self.distinct_operators
    }

    pub fn word(&self, index: usize) -> super::GateWord {
        super::GateWord {
            gate_set_name: self.gate_set.name.clone(),
            symbols: self.entries[index].symbols.clone(),
        }
    }

    pub fn unitary(&self, index: usize) -> &Unitary2 {
        &self.entries[index].unitary
    }

    pub(crate) fn entry(&self, index: usize) -> &NetEntry {
        &self.entries[index]
    }

    /// Index of the entry closest to `target` in projective distance; the
    /// lowest index wins ties.
    pub fn nearest(&self, target: &Unitary2) -> usize {
        nearest_in(&self.entries, &target.quaternion()).0
    }

    /// Largest nearest-entry distance over `probes`.
    pub fn covering_radius(&self, probes: &[Unitary2]) -> f64 {
        covering_radius(&self.entries, probes)
    }
}

/// `|⟨q, q'⟩|` is monotone in projective distance, which equals
/// `min(‖q − q'‖, ‖q + q'‖) = sqrt(2 − 2|⟨q, q'⟩|)`.
fn overlap(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]).abs()
}

fn nearest_in(entries: &[NetEntry], q: &[f64; 4]) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, e) in entries.iter().enumerate() {
        let o = overlap(&e.quat, q);
        if o > best.1 {
            best = (i, o);
        }
    }
    best
}

fn quat_distance(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let minus = (0..4).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>();
    let plus = (0..4).map(|k| (a[k] + b[k]).powi(2)).sum::<f64>();
    minus.min(plus).sqrt()
}

fn covering_radius(entries: &[NetEntry], probes: &[Unitary2]) -> f64 {
    exec::map(probes, |p| {
        let i = nearest_in(entries, &p.quaternion()).0;
        crate::su2::dist_projective(p, &entries[i].unitary)
    })
    .into_iter()
    .fold(0.0, f64::max)
}

fn exact_key(q: &[f64; 4]) -> [i64; 4] {
    q.map(|x| (x / EXACT_QUANTUM).round() as i64)
}

/// Breadth-first enumeration of every word of length `≤ l0`.
///
/// Words are visited by length and then lexicographically, so the first word
/// reaching an operator is the shortest, lexicographically smallest one.
/// Operators equal up to phase are merged on the fly. The covering radius of
/// that exact set is measured on a fixed probe sample, entries closer than a
/// quarter of it to an earlier entry are dropped, and the radius of the final
/// net is measured again.
pub fn build_net(gate_set: &GateSet, l0: usize) -> Result<EpsilonNet> {
    if !(1..=MAX_NET_WORD_LENGTH).contains(&l0) {
        return Err(domain(format!(
            "net word length {l0} outside 1..={MAX_NET_WORD_LENGTH}"
        )));
    }
    let mut all = vec![NetEntry::new(Vec::new(), Unitary2::IDENTITY)];
    let mut seen: HashSet<[i64; 4]> = HashSet::new();
    seen.insert(exact_key(&all[0].quat));
    let mut frontier = 0..1;
    for _ in 0..l0 {
        let start = all.len();
        for parent in frontier.clone() {
            for (s, (_, g)) in gate_set.generators().iter().enumerate() {
                let unitary = g * &all[parent].unitary;
                let entry = NetEntry::new(
                    {
                        let mut w = all[parent].symbols.clone();
                        w.push(s as u8);
                        w
                    },
                    unitary,
                );
                if seen.insert(exact_key(&entry.quat)) {
                    all.push(entry);
                    if all.len() > MAX_ENUMERATED {
                        return Err(Error::Resource(format!(
                            "more than {MAX_ENUMERATED} distinct operators at length {l0}"
                        )));
                    }
                }
            }
        }
        frontier = start..all.len();
    }

    let probes = haar_sample(PROBE_SEED, stream::HAAR_PROBE, PROBE_COUNT);
    let distinct_operators = all.len();
    let exact_radius = covering_radius(&all, &probes);
    let dedup_threshold = exact_radius / 4.0;
    let entries = coarse_dedup(all, dedup_threshold);
    let resolution = covering_radius(&entries, &probes);

    Ok(EpsilonNet {
        gate_set: gate_set.clone(),
        max_word_length: l0,
        entries,
        resolution,
        dedup_threshold,
        distinct_operators,
    })
}

/// Greedy in input order: keep an entry unless a kept one lies within
/// `threshold`. A 4-D grid of side `threshold` over the quaternions limits
/// each check to the 3⁴ neighbouring cells of `q` and of `−q`.
fn coarse_dedup(all: Vec<NetEntry>, threshold: f64) -> Vec<NetEntry> {
    if threshold <= 0.0 {
        return all;
    }
    let cell = |q: &[f64; 4]| q.map(|x| (x / threshold).floor() as i64);
    let mut grid: HashMap<[i64; 4], Vec<usize>> = HashMap::new();
    let mut kept: Vec<NetEntry> = Vec::new();
    for entry in all {
        let neg = entry.quat.map(|x| -x);
        let clash = [entry.quat, neg].iter().any(|q| {
            let c = cell(q);
            (0..81).any(|k| {
                let mut key = c;
                let mut r = k;
                for d in key.iter_mut() {
                    *d += (r % 3) as i64 - 1;
                    r /= 3;
                }
                grid.get(&key).is_some_and(|ids| {
                    ids.iter()
                        .any(|&i| quat_distance(&kept[i].quat, &entry.quat) <= threshold)
                })
            })
        });
        if !clash {
            grid.entry(cell(&entry.quat)).or_default().push(kept.len());
            kept.push(entry);
        }
    }
    kept
}
