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

//! Compilation of single-qubit unitaries into words over a finite gate set.
//!
//! A precomputed [`EpsilonNet`] provides the depth-0 approximation. Each
//! further level factors the residual `U·U_{n−1}†` into a balanced group
//! commutator `V W V† W†`, approximates `V` and `W` one level down, and
//! prepends the commutator word to the previous approximation.

mod cache;
mod commutator;
mod net;
mod segments;

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

pub use cache::{cache_path, load_or_build, read_net, write_net};
pub use commutator::gc_decompose;
pub use net::{build_net, EpsilonNet, MAX_ENUMERATED, MAX_NET_WORD_LENGTH, PROBE_COUNT};
pub use segments::{count_covering_segments, segments_closed_form};

use crate::error::{domain, Error, Result};
use crate::su2::{dist_projective, Complex, Unitary2};

/// Deepest recursion level accepted by [`solovay_kitaev`].
pub const MAX_DEPTH: usize = 6;

/// Slack `K` in the length law `len ≤ 5ⁿ·(L₀ + K)`. Inverse words have the
/// same length as the originals, so no slack is needed.
pub const LENGTH_SLACK: usize = 0;

/// An ordered, named list of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSet {
    name: String,
    generators: Vec<(String, Unitary2)>,
    inverses: Vec<Option<u8>>,
}

impl GateSet {
    pub fn new(name: impl Into<String>, generators: Vec<(String, Unitary2)>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(domain("gate set name must be nonempty"));
        }
        if generators.is_empty() || generators.len() > u8::MAX as usize {
            return Err(domain("gate set needs between 1 and 255 generators"));
        }
        for (i, (label, u)) in generators.iter().enumerate() {
            if generators[..i].iter().any(|(l, _)| l == label) {
                return Err(domain(format!("duplicate generator label {label:?}")));
            }
            if u.unitarity_defect() > crate::su2::UNITARY_TOL {
                return Err(domain(format!("generator {label} is not unitary")));
            }
        }
        let inverses = generators
            .iter()
            .map(|(_, u)| {
                let inv = u.adjoint();
                generators
                    .iter()
                    .position(|(_, g)| dist_projective(g, &inv) < 1e-12)
                    .map(|i| i as u8)
            })
            .collect();
        Ok(GateSet {
            name,
            generators,
            inverses,
        })
    }

    /// `{H, T, T†}`.
    pub fn clifford_t() -> Self {
        Self::new("clifford_t", vec![hadamard(), t_gate(1), t_gate(-1)]).expect("valid gate set")
    }

    /// `{H, S, S†, T, T†}`.
    pub fn clifford_t_full() -> Self {
        Self::new(
            "clifford_t_full",
            vec![hadamard(), s_gate(1), s_gate(-1), t_gate(1), t_gate(-1)],
        )
        .expect("valid gate set")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "clifford_t" => Ok(Self::clifford_t()),
            "clifford_t_full" => Ok(Self::clifford_t_full()),
            other => Err(domain(format!("unknown gate set {other:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[(String, Unitary2)] {
        &self.generators
    }

    pub fn label(&self, symbol: u8) -> Option<&str> {
        self.generators
            .get(symbol as usize)
            .map(|(l, _)| l.as_str())
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverses.iter().all(Option::is_some)
    }

    /// Product of the word's generators; the first symbol acts first.
    pub fn evaluate(&self, word: &GateWord) -> Result<Unitary2> {
        if word.gate_set_name != self.name {
            return Err(domain(format!(
                "word over {:?} evaluated with gate set {:?}",
                word.gate_set_name, self.name
            )));
        }
        self.evaluate_symbols(&word.symbols)
    }

    pub(crate) fn evaluate_symbols(&self, symbols: &[u8]) -> Result<Unitary2> {
        symbols.iter().try_fold(Unitary2::IDENTITY, |acc, &s| {
            self.generators
                .get(s as usize)
                .map(|(_, g)| g * &acc)
                .ok_or_else(|| domain(format!("symbol {s} out of range for {}", self.name)))
        })
    }

    pub fn inverse_word(&self, word: &GateWord) -> Result<GateWord> {
        Ok(GateWord {
            gate_set_name: word.gate_set_name.clone(),
            symbols: self.inverse_symbols(&word.symbols)?,
        })
    }

    pub(crate) fn inverse_symbols(&self, symbols: &[u8]) -> Result<Vec<u8>> {
        symbols
            .iter()
            .rev()
            .map(|&s| {
                self.inverses
                    .get(s as usize)
                    .copied()
                    .flatten()
                    .ok_or_else(|| domain(format!("generator {s} has no inverse in {}", self.name)))
            })
            .collect()
    }

    /// Appends `tail` to `head`, cancelling generator/inverse pairs at the seam.
    pub(crate) fn concat_cancel(&self, head: &mut Vec<u8>, tail: &[u8]) {
        for &s in tail {
            match head.last() {
                Some(&last) if self.inverses[last as usize] == Some(s) => {
                    head.pop();
                }
                _ => head.push(s),
            }
        }
    }
}

fn hadamard() -> (String, Unitary2) {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    (
        "H".into(),
        Unitary2::from_matrix_unchecked([[h, h], [h, -h]]),
    )
}

fn phase_gate(label: &str, angle: f64) -> (String, Unitary2) {
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    (
        label.into(),
        Unitary2::from_matrix_unchecked([[one, zero], [zero, Complex::from_polar(1.0, angle)]]),
    )
}

fn t_gate(sign: i32) -> (String, Unitary2) {
    let label = if sign > 0 { "T" } else { "Tdg" };
    phase_gate(label, sign as f64 * std::f64::consts::FRAC_PI_4)
}

fn s_gate(sign: i32) -> (String, Unitary2) {
    let label = if sign > 0 { "S" } else { "Sdg" };
    phase_gate(label, sign as f64 * std::f64::consts::FRAC_PI_2)
}

/// A sequence of generator indices over a named gate set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateWord {
    pub gate_set_name: String,
    pub symbols: Vec<u8>,
}

impl GateWord {
    pub fn empty(gate_set: &GateSet) -> Self {
        GateWord {
            gate_set_name: gate_set.name.clone(),
            symbols: Vec::new(),
        }
    }

    pub fn new(gate_set: &GateSet, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= gate_set.len()) {
            return Err(domain(format!(
                "symbol {bad} out of range for {}",
                gate_set.name
            )));
        }
        Ok(GateWord {
            gate_set_name: gate_set.name.clone(),
            symbols,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn display<'a>(&'a self, gate_set: &'a GateSet) -> impl fmt::Display + 'a {
        WordDisplay {
            word: self,
            gate_set,
        }
    }
}

struct WordDisplay<'a> {
    word: &'a GateWord,
    gate_set: &'a GateSet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &s) in self.word.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.gate_set.label(s).unwrap_or("?"))?;
        }
        Ok(())
    }
}

/// A compiled word together with its measured accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub word: GateWord,
    /// Projective distance between the target and the evaluated word.
    pub achieved_error: f64,
    pub recursion_depth: usize,
    /// The evaluated word.
    pub unitary: Unitary2,
}

/// Nearest net entry in projective distance (depth 0).
pub fn basic_approx(net: &EpsilonNet, target: &Unitary2) -> Result<SynthesisResult> {
    let idx = net.nearest(target);
    let entry = net.entry(idx);
    Ok(SynthesisResult {
        word: GateWord {
            gate_set_name: net.gate_set().name.clone(),
            symbols: entry.symbols.clone(),
        },
        achieved_error: dist_projective(target, &entry.unitary),
        recursion_depth: 0,
        unitary: entry.unitary,
    })
}

/// Intermediate approximation carried through the recursion; `unitary` is the
/// running product of the pieces, not a re-evaluation of `symbols`.
#[derive(Clone)]
struct Approx {
    symbols: Vec<u8>,
    unitary: Unitary2,
}

fn approx_at(net: &EpsilonNet, target: &Unitary2, depth: usize) -> Result<Approx> {
    let mut current = base(net, target);
    for level in 1..=depth {
        current = refine(net, target, &current, level)?;
    }
    Ok(current)
}

fn base(net: &EpsilonNet, target: &Unitary2) -> Approx {
    let entry = net.entry(net.nearest(target));
    Approx {
        symbols: entry.symbols.clone(),
        unitary: entry.unitary,
    }
}

/// One recursion level: `U_n = V_{n−1} W_{n−1} V_{n−1}† W_{n−1}† U_{n−1}`.
fn refine(net: &EpsilonNet, target: &Unitary2, prev: &Approx, level: usize) -> Result<Approx> {
    let gs = net.gate_set();
    let delta = target * &prev.unitary.adjoint();
    let (v, w) = commutator::balanced_commutator(&delta);
    let v_approx = approx_at(net, &v, level - 1)?;
    let w_approx = approx_at(net, &w, level - 1)?;

    let mut symbols = prev.symbols.clone();
    gs.concat_cancel(&mut symbols, &gs.inverse_symbols(&w_approx.symbols)?);
    gs.concat_cancel(&mut symbols, &gs.inverse_symbols(&v_approx.symbols)?);
    gs.concat_cancel(&mut symbols, &w_approx.symbols);
    gs.concat_cancel(&mut symbols, &v_approx.symbols);

    let (vu, wu) = (v_approx.unitary, w_approx.unitary);
    let unitary = vu * wu * vu.adjoint() * wu.adjoint() * prev.unitary;
    Ok(Approx { symbols, unitary })
}

fn finish(
    net: &EpsilonNet,
    target: &Unitary2,
    approx: Approx,
    depth: usize,
) -> Result<SynthesisResult> {
    let gs = net.gate_set();
    let unitary = gs.evaluate_symbols(&approx.symbols)?;
    Ok(SynthesisResult {
        achieved_error: dist_projective(target, &unitary),
        word: GateWord {
            gate_set_name: gs.name.clone(),
            symbols: approx.symbols,
        },
        recursion_depth: depth,
        unitary,
    })
}

fn check_recursion_ready(net: &EpsilonNet, depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(domain(format!(
            "recursion depth {depth} exceeds cap {MAX_DEPTH}"
        )));
    }
    if depth > 0 && !net.gate_set().is_inverse_closed() {
        return Err(domain(format!(
            "gate set {} is not closed under inversion",
            net.gate_set().name
        )));
    }
    Ok(())
}

/// Depth-`depth` Solovay-Kitaev approximation of `target`.
pub fn solovay_kitaev(
    net: &EpsilonNet,
    target: &Unitary2,
    depth: usize,
) -> Result<SynthesisResult> {
    check_recursion_ready(net, depth)?;
    let approx = approx_at(net, target, depth)?;
    finish(net, target, approx, depth)
}

/// Shallowest depth whose result meets `eps`, searching up to [`MAX_DEPTH`].
pub fn synth_to_accuracy(net: &EpsilonNet, target: &Unitary2, eps: f64) -> Result<SynthesisResult> {
    synth_to_accuracy_capped(net, target, eps, MAX_DEPTH)
}

/// As [`synth_to_accuracy`] with an explicit depth cap `≤ MAX_DEPTH`.
pub fn synth_to_accuracy_capped(
    net: &EpsilonNet,
    target: &Unitary2,
    eps: f64,
    max_depth: usize,
) -> Result<SynthesisResult> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(domain("requested accuracy must be positive"));
    }
    check_recursion_ready(net, max_depth)?;
    let mut approx = base(net, target);
    let mut best: Option<SynthesisResult> = None;
    for depth in 0..=max_depth {
        if depth > 0 {
            approx = refine(net, target, &approx, depth)?;
        }
        let result = finish(net, target, approx.clone(), depth)?;
        if result.achieved_error <= eps {
            return Ok(result);
        }
        if best
            .as_ref()
            .is_none_or(|b| result.achieved_error < b.achieved_error)
        {
            best = Some(result);
        }
    }
    let best = best.expect("at least depth 0 is evaluated");
    Err(Error::Unreachable {
        requested: eps,
        depth: max_depth,
        best_error: best.achieved_error,
        best: Box::new(best),
    })
}
