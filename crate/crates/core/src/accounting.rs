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

//! Classical-bit accounting for the quantum streaming algorithms.
//!
//! Gate-array programs are counted like classical memory: a word of `L`
//! gates over a `g`-generator set occupies `L` slots of `⌈log₂(g+1)⌉` bits,
//! symbol 0 of each slot being the no-op.

use std::f64::consts::LN_2;
use std::fmt;

use crate::equality::{entropy_bits, fingerprint_size, FingerprintSet};
use crate::error::{domain, Result};
use crate::synthesis::{GateWord, SynthesisResult};

/// Multiplier `K` in the randomized Equality baseline `⌈log₂ n⌉·K`.
pub const RANDOMIZED_EQUALITY_CONSTANT: u64 = 3;

/// Bits charged per stored rotation in the operator-storage route for
/// Equality (`n²` operators).
pub const BITS_PER_STORED_OPERATOR: u64 = 2;

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// `⌈log₂(g + 1)⌉`.
pub fn bits_per_slot(gate_set_size: usize) -> Result<u32> {
    if gate_set_size == 0 {
        return Err(domain("gate set must have at least one generator"));
    }
    Ok(ceil_log2(gate_set_size as u64 + 1))
}

pub fn program_bits(word: &GateWord, gate_set_size: usize) -> Result<u64> {
    Ok(bits_per_slot(gate_set_size)? as u64 * word.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    PartialMod,
    Equality,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::PartialMod => "partialmod",
            Problem::Equality => "equality",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemParams {
    PartialMod { p: u64, v: u64, delta: f64 },
    Equality { n: u32, eps: f64 },
}

impl ProblemParams {
    pub fn problem(&self) -> Problem {
        match self {
            ProblemParams::PartialMod { .. } => Problem::PartialMod,
            ProblemParams::Equality { .. } => Problem::Equality,
        }
    }
}

/// Best classical streaming algorithm a report is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    /// Deterministic, `⌈log₂ p⌉` bits.
    PartialMod { p: u64 },
    /// Deterministic, `n` bits.
    EqualityDeterministic { n: u32 },
    /// Karp-Rabin style fingerprint, `⌈log₂ n⌉·k` bits.
    EqualityRandomized { n: u32, k: u64 },
}

pub fn classical_baseline(baseline: Baseline) -> u64 {
    match baseline {
        Baseline::PartialMod { p } => ceil_log2(p) as u64,
        Baseline::EqualityDeterministic { n } => n as u64,
        Baseline::EqualityRandomized { n, k } => ceil_log2(n as u64) as u64 * k,
    }
}

fn baseline_note(baseline: Baseline) -> String {
    match baseline {
        Baseline::PartialMod { p } => format!("classical: deterministic ceil(log2 p) with p={p}"),
        Baseline::EqualityDeterministic { n } => format!("classical: deterministic n={n} bits"),
        Baseline::EqualityRandomized { n, k } => {
            format!("classical randomized: ceil(log2 n)*K with n={n}, K={k} (modeling constant)")
        }
    }
}

/// Bits needed to name one `t`-subset of `[0, 2ⁿ)`, `t = ⌈(2/ε)(n+3)⌉`.
pub fn equality_storage_bits(n: u32, eps: f64) -> Result<u64> {
    let t = fingerprint_size(n, eps)? as u64;
    let (nats, _) = entropy_bits(n, t)?;
    Ok((nats / LN_2 - 1e-9).ceil().max(0.0) as u64)
}

/// What the quantum side of a report is built from.
#[derive(Debug, Clone, Copy)]
pub enum SynthesisInputs<'a> {
    /// A compiled `R(π/(2p))` and the size of its gate set. `None` means
    /// no gates are needed (`v = 0`).
    PartialMod {
        result: Option<&'a SynthesisResult>,
        gate_set_size: usize,
    },
    Equality {
        set: &'a FingerprintSet,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceReport {
    pub problem: Problem,
    pub params: ProblemParams,
    pub quantum_program_bits: u64,
    pub quantum_qubits: u64,
    pub classical_bits: u64,
    pub notes: Vec<String>,
}

pub fn build_report(params: ProblemParams, inputs: SynthesisInputs<'_>) -> Result<SpaceReport> {
    let mut notes = Vec::new();
    match (params, inputs) {
        (
            ProblemParams::PartialMod { p, v, delta },
            SynthesisInputs::PartialMod {
                result,
                gate_set_size,
            },
        ) => {
            if p == 0 || !(delta > 0.0 && delta < 1.0) {
                return Err(domain("partialmod report needs p ≥ 1 and delta in (0, 1)"));
            }
            let quantum_program_bits = match result {
                Some(r) => {
                    notes.push(format!(
                        "quantum: {} gates x {} bits/slot, depth {}, error {:e}",
                        r.word.len(),
                        bits_per_slot(gate_set_size)?,
                        r.recursion_depth,
                        r.achieved_error
                    ));
                    program_bits(&r.word, gate_set_size)?
                }
                None if v == 0 => {
                    notes.push("quantum: v=0 needs no rotation".into());
                    0
                }
                None => {
                    return Err(domain(
                        "partialmod report with v > 0 needs a synthesized word",
                    ))
                }
            };
            let baseline = Baseline::PartialMod { p };
            notes.push(baseline_note(baseline));
            Ok(SpaceReport {
                problem: Problem::PartialMod,
                params,
                quantum_program_bits,
                quantum_qubits: 1,
                classical_bits: classical_baseline(baseline),
                notes,
            })
        }
        (ProblemParams::Equality { n, eps }, SynthesisInputs::Equality { set }) => {
            if set.n() != n {
                return Err(domain("fingerprint set bit length does not match report"));
            }
            let entropy = equality_storage_bits(n, eps)?;
            let operators = BITS_PER_STORED_OPERATOR * (n as u64).pow(2);
            notes.push(format!(
                "quantum: max(entropy of fingerprint set = {entropy}, {BITS_PER_STORED_OPERATOR}*n^2 operator storage = {operators})"
            ));
            let baseline = Baseline::EqualityDeterministic { n };
            notes.push(baseline_note(baseline));
            let randomized = Baseline::EqualityRandomized {
                n,
                k: RANDOMIZED_EQUALITY_CONSTANT,
            };
            notes.push(format!(
                "{} = {}",
                baseline_note(randomized),
                classical_baseline(randomized)
            ));
            Ok(SpaceReport {
                problem: Problem::Equality,
                params,
                quantum_program_bits: entropy.max(operators),
                quantum_qubits: ceil_log2(set.t() as u64) as u64 + 1,
                classical_bits: classical_baseline(baseline),
                notes,
            })
        }
        _ => Err(domain("report inputs do not match the problem")),
    }
}

impl SpaceReport {
    pub const CSV_HEADER: &'static str =
        "problem,p,v,delta,n,eps,quantum_program_bits,quantum_qubits,classical_bits,notes";

    /// One CSV row; absent parameters are left empty and notes are joined
    /// with `; ` inside a quoted field.
    pub fn to_csv_row(&self) -> String {
        let params = match self.params {
            ProblemParams::PartialMod { p, v, delta } => format!("{p},{v},{delta:.16e},,"),
            ProblemParams::Equality { n, eps } => format!(",,,{n},{eps:.16e}"),
        };
        format!(
            "{},{},{},{},{},\"{}\"",
            self.problem,
            params,
            self.quantum_program_bits,
            self.quantum_qubits,
            self.classical_bits,
            self.notes.join("; ").replace('"', "\"\"")
        )
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.params {
            ProblemParams::PartialMod { p, v, delta } => {
                writeln!(f, "PartialMOD  p={p} v={v} delta={delta}")?
            }
            ProblemParams::Equality { n, eps } => writeln!(f, "Equality  n={n} eps={eps}")?,
        }
        writeln!(f, "  quantum program bits : {}", self.quantum_program_bits)?;
        writeln!(f, "  quantum qubits       : {}", self.quantum_qubits)?;
        writeln!(f, "  classical bits       : {}", self.classical_bits)?;
        for note in &self.notes {
            writeln!(f, "  - {note}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthesis::GateSet;

    #[test]
    fn slot_widths() {
        assert_eq!(bits_per_slot(3).unwrap(), 2);
        assert_eq!(bits_per_slot(1).unwrap(), 1);
        for c in 1..8u32 {
            assert_eq!(bits_per_slot((1usize << c) - 1).unwrap(), c);
        }
        assert!(bits_per_slot(0).is_err());
    }

    #[test]
    fn program_bit_examples() {
        let gs = GateSet::clifford_t();
        assert_eq!(program_bits(&GateWord::empty(&gs), 3).unwrap(), 0);
        let w = GateWord::new(&gs, vec![0; 10]).unwrap();
        assert_eq!(program_bits(&w, 3).unwrap(), 20);
    }

    #[test]
    fn baselines() {
        assert_eq!(classical_baseline(Baseline::PartialMod { p: 1024 }), 10);
        assert_eq!(classical_baseline(Baseline::PartialMod { p: 1 }), 0);
        assert_eq!(classical_baseline(Baseline::PartialMod { p: 1025 }), 11);
        assert_eq!(
            classical_baseline(Baseline::EqualityDeterministic { n: 64 }),
            64
        );
        assert_eq!(
            classical_baseline(Baseline::EqualityRandomized { n: 64, k: 3 }),
            18
        );
    }

    #[test]
    fn empty_word_report_is_well_formed() {
        let gs = GateSet::clifford_t();
        let r = SynthesisResult {
            word: GateWord::empty(&gs),
            achieved_error: 0.0,
            recursion_depth: 0,
            unitary: crate::su2::Unitary2::IDENTITY,
        };
        let report = build_report(
            ProblemParams::PartialMod {
                p: 4,
                v: 1,
                delta: 0.1,
            },
            SynthesisInputs::PartialMod {
                result: Some(&r),
                gate_set_size: 3,
            },
        )
        .unwrap();
        assert_eq!(report.quantum_program_bits, 0);
        assert_eq!(report.classical_bits, 2);
        assert!(report.to_csv_row().starts_with("partialmod,4,1,"));
        assert!(report.to_string().contains("quantum program bits : 0"));
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let fs = FingerprintSet::new(4, vec![1, 2], 0.5).unwrap();
        let err = build_report(
            ProblemParams::PartialMod {
                p: 4,
                v: 1,
                delta: 0.1,
            },
            SynthesisInputs::Equality { set: &fs },
        );
        assert!(err.is_err());
        let missing = build_report(
            ProblemParams::PartialMod {
                p: 4,
                v: 2,
                delta: 0.1,
            },
            SynthesisInputs::PartialMod {
                result: None,
                gate_set_size: 3,
            },
        );
        assert!(missing.is_err());
    }
}
