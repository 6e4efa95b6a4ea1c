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

//! Quantum-fingerprinting Equality algorithm.
//!
//! The state `(1/√t)·Σ_j R(φ_j)|0⟩⊗|j⟩` is fully described by the `t`
//! accumulated angles `φ_j`, so the production simulator tracks only those
//! ([`BranchState`]). A 1-bit of `x` at arrival index `i` adds
//! `π·m_j·w_i/2ⁿ` to branch `j` and a 1-bit of `y` subtracts it, where the
//! bit weight `w_i` is `2^i` (LSB first) by default. The final amplitude of
//! `|0⟩⊗|0⟩` is `(1/t)·Σ_j cos(π·m_j·(x−y)/2ⁿ)`.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};
use std::fmt::Write as _;

use rand::Rng as _;
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};
use crate::exec;
use crate::rng::{rng_for, stream};
use crate::su2::{rotation_y, Complex};

/// Largest bit length handled by the integer angle reduction.
pub const MAX_BITS: u32 = 62;
/// Largest `n` for brute-force verification over every difference `g`.
pub const MAX_VERIFY_BITS: u32 = 16;
/// Largest `n` for enumeration of signed bit-difference vectors (`3ⁿ` cases).
pub const MAX_SIGNED_BITS: u32 = 10;
/// Largest branch count simulated by the full statevector oracle.
pub const MAX_STATEVECTOR_BRANCHES: usize = 64;

/// Which arrival position carries the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// Arrival index `i` (0-based) has weight `2^i`.
    #[default]
    LsbFirst,
    /// Arrival index `i` (0-based) has weight `2^(n−1−i)`.
    MsbFirst,
}

impl BitOrder {
    fn exponent(self, i: u32, n: u32) -> u32 {
        match self {
            BitOrder::LsbFirst => i,
            BitOrder::MsbFirst => n - 1 - i,
        }
    }
}

/// Fingerprint integers `{m_j}` over `n`-bit inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct FingerprintSet {
    n: u32,
    m_values: Vec<u64>,
    epsilon: f64,
}

impl FingerprintSet {
    pub fn new(n: u32, m_values: Vec<u64>, epsilon: f64) -> Result<Self> {
        if !(1..=MAX_BITS).contains(&n) {
            return Err(domain(format!("bit length {n} outside 1..={MAX_BITS}")));
        }
        if m_values.is_empty() {
            return Err(domain("fingerprint set must be nonempty"));
        }
        if let Some(m) = m_values.iter().find(|&&m| m >> n != 0) {
            return Err(domain(format!("fingerprint {m} out of range for n = {n}")));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(domain("epsilon must lie in (0, 1]"));
        }
        Ok(FingerprintSet {
            n,
            m_values,
            epsilon,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.m_values.len()
    }

    pub fn m_values(&self) -> &[u64] {
        &self.m_values
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `"n t epsilon"` on the first line, then one integer per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.t(), self.epsilon);
        for m in &self.m_values {
            writeln!(s, "{m}").expect("writing to a String cannot fail");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Format(msg.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| bad("missing header line"))?
            .split_whitespace()
            .collect();
        let [n, t, eps] = header[..] else {
            return Err(bad("header must be \"n t epsilon\""));
        };
        let n: u32 = n.parse().map_err(|_| bad("bad n"))?;
        let t: usize = t.parse().map_err(|_| bad("bad t"))?;
        let eps: f64 = eps.parse().map_err(|_| bad("bad epsilon"))?;
        let m_values = lines
            .map(|l| l.parse::<u64>().map_err(|_| bad("bad fingerprint value")))
            .collect::<Result<Vec<_>>>()?;
        if m_values.len() != t {
            return Err(bad("fingerprint count does not match header"));
        }
        FingerprintSet::new(n, m_values, eps)
    }

    /// `π·k/2ⁿ` for `k = (m·2^e) mod 2^{n+1}`: the branch angle reduced mod 2π.
    fn reduced_angle(&self, m: u64, exponent: u32) -> f64 {
        let modulus = 1u128 << (self.n + 1);
        let k = ((m as u128) << exponent) % modulus;
        PI * k as f64 / (1u64 << self.n) as f64
    }
}

/// `⌈(2/ε)(n+3)⌉`.
pub fn fingerprint_size(n: u32, eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(domain("epsilon must lie in (0, 1]"));
    }
    Ok(((2.0 / eps) * (n as f64 + 3.0) - 1e-9).ceil() as usize)
}

/// Accumulated rotation angle of each branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    pub angles: Vec<f64>,
}

impl BranchState {
    /// Amplitude of `|0⟩⊗|0⟩` after the closing Hadamard layer.
    pub fn acceptance_amplitude(&self) -> f64 {
        self.angles.iter().map(|a| a.cos()).sum::<f64>() / self.angles.len() as f64
    }
}

/// Bounded per-rotation angle errors `δ_ij`, `n` rows by `t` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationMatrix {
    n: usize,
    t: usize,
    delta: Vec<f64>,
    bound: f64,
}

impl PerturbationMatrix {
    pub fn new(n: usize, t: usize, delta: Vec<f64>, bound: f64) -> Result<Self> {
        if delta.len() != n * t {
            return Err(domain("perturbation matrix must be n×t"));
        }
        if delta.iter().any(|d| !d.is_finite() || d.abs() > bound) {
            return Err(domain(format!("perturbation exceeds bound {bound}")));
        }
        Ok(PerturbationMatrix { n, t, delta, bound })
    }

    pub fn zeros(n: usize, t: usize) -> Self {
        PerturbationMatrix {
            n,
            t,
            delta: vec![0.0; n * t],
            bound: 1.0 / n.max(1) as f64,
        }
    }

    /// Entries uniform in `[−bound, bound]`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, t: usize, bound: f64, rng: &mut R) -> Self {
        let delta = (0..n * t)
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        PerturbationMatrix { n, t, delta, bound }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.delta[i * self.t + j]
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.t)
    }
}

/// Interprets `bits` as an integer under `order`.
pub fn value_of(bits: &[bool], order: BitOrder) -> u64 {
    let n = bits.len() as u32;
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| 1u64 << order.exponent(i as u32, n))
        .sum()
}

pub fn acceptance_amplitude(x: u64, y: u64, fs: &FingerprintSet) -> Result<f64> {
    if x >> fs.n != 0 || y >> fs.n != 0 {
        return Err(domain("inputs must be n-bit integers"));
    }
    let g = x as i128 - y as i128;
    let modulus = 1i128 << (fs.n + 1);
    let half = (1u64 << fs.n) as f64;
    let sum: f64 = fs
        .m_values
        .iter()
        .map(|&m| {
            let k = (m as i128 * g).rem_euclid(modulus);
            (PI * k as f64 / half).cos()
        })
        .sum();
    Ok(sum / fs.t() as f64)
}

fn check_inputs(x_bits: &[bool], y_bits: &[bool], fs: &FingerprintSet) -> Result<()> {
    if x_bits.len() != fs.n as usize || y_bits.len() != fs.n as usize {
        return Err(domain(format!(
            "inputs must both have {} bits (got {} and {})",
            fs.n,
            x_bits.len(),
            y_bits.len()
        )));
    }
    Ok(())
}

/// Angle-tracking simulation; all of `x` is consumed before any of `y`.
pub fn stream_branches(
    x_bits: &[bool],
    y_bits: &[bool],
    fs: &FingerprintSet,
    order: BitOrder,
) -> Result<BranchState> {
    check_inputs(x_bits, y_bits, fs)?;
    let mut angles = vec![0.0; fs.t()];
    for (sign, bits) in [(1.0, x_bits), (-1.0, y_bits)] {
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            let e = order.exponent(i as u32, fs.n);
            for (a, &m) in angles.iter_mut().zip(&fs.m_values) {
                *a += sign * fs.reduced_angle(m, e);
            }
        }
    }
    Ok(BranchState { angles })
}

/// Acceptance probability under the default LSB-first convention.
pub fn run_streaming(x_bits: &[bool], y_bits: &[bool], fs: &FingerprintSet) -> Result<f64> {
    Ok(stream_branches(x_bits, y_bits, fs, BitOrder::LsbFirst)?
        .acceptance_amplitude()
        .powi(2))
}

/// Final `2t`-dimensional state of the explicit circuit: a Hadamard layer on
/// the branch register, one controlled rotation layer per 1-bit, and a second
/// Hadamard layer. Index `a·t + j` holds qubit value `a` and branch `j`.
pub fn statevector_final_state(
    x_bits: &[bool],
    y_bits: &[bool],
    fs: &FingerprintSet,
) -> Result<Vec<Complex>> {
    check_inputs(x_bits, y_bits, fs)?;
    let t = fs.t();
    if !t.is_power_of_two() || t > MAX_STATEVECTOR_BRANCHES {
        return Err(domain(format!(
            "statevector simulation needs a power-of-two t ≤ {MAX_STATEVECTOR_BRANCHES}, got {t}"
        )));
    }
    let mut amp = vec![Complex::new(0.0, 0.0); 2 * t];
    amp[0] = Complex::new(1.0, 0.0);
    hadamard_layer(&mut amp, t);
    let scale = (1u64 << fs.n) as f64;
    for (sign, bits) in [(1.0, x_bits), (-1.0, y_bits)] {
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            for (j, &m) in fs.m_values.iter().enumerate() {
                let angle = sign * PI * m as f64 * 2f64.powi(i as i32) / scale;
                let r = rotation_y(angle);
                let (a0, a1) = (amp[j], amp[t + j]);
                amp[j] = r.get(0, 0) * a0 + r.get(0, 1) * a1;
                amp[t + j] = r.get(1, 0) * a0 + r.get(1, 1) * a1;
            }
        }
    }
    hadamard_layer(&mut amp, t);
    Ok(amp)
}

/// One Hadamard gate per qubit of the `log₂ t`-qubit branch register.
fn hadamard_layer(amp: &mut [Complex], t: usize) {
    let h = FRAC_1_SQRT_2;
    let mut bit = 1;
    while bit < t {
        for a in 0..2 {
            for j in (0..t).filter(|j| j & bit == 0) {
                let (lo, hi) = (a * t + j, a * t + (j | bit));
                let (u, v) = (amp[lo], amp[hi]);
                amp[lo] = (u + v) * h;
                amp[hi] = (u - v) * h;
            }
        }
        bit <<= 1;
    }
}

/// Probability of the all-zeros outcome from the full statevector.
pub fn simulate_statevector(x_bits: &[bool], y_bits: &[bool], fs: &FingerprintSet) -> Result<f64> {
    Ok(statevector_final_state(x_bits, y_bits, fs)?[0].norm_sqr())
}

/// `max_{g≠0} |Σ_j cos(π·m_j·g/2ⁿ)| / t` over every difference of two
/// `n`-bit integers.
pub fn max_residual(fs: &FingerprintSet) -> Result<f64> {
    if fs.n > MAX_VERIFY_BITS {
        return Err(domain(format!("brute force needs n ≤ {MAX_VERIFY_BITS}")));
    }
    let half = 1usize << fs.n;
    let mask = 2 * half - 1;
    let table: Vec<f64> = (0..2 * half)
        .map(|k| (PI * k as f64 / half as f64).cos())
        .collect();
    let t = fs.t() as f64;
    // cos is even, so g and −g coincide
    let (_, worst) = exec::max_over_range(1..half, |g| {
        fs.m_values
            .iter()
            .map(|&m| table[(m as usize).wrapping_mul(g) & mask])
            .sum::<f64>()
            .abs()
            / t
    })
    .unwrap_or((0, 0.0));
    Ok(worst)
}

pub fn verify_fingerprint_set(fs: &FingerprintSet) -> Result<bool> {
    Ok(max_residual(fs)? <= fs.epsilon.sqrt())
}

/// Highest acceptance probability over all `x ≠ y`.
pub fn worst_false_accept(fs: &FingerprintSet) -> Result<f64> {
    Ok(max_residual(fs)?.powi(2))
}

fn signed_vector(mut k: usize, n: usize) -> impl Iterator<Item = i32> {
    (0..n).map(move |_| {
        let d = (k % 3) as i32 - 1;
        k /= 3;
        d
    })
}

fn check_perturbation(fs: &FingerprintSet, pert: &PerturbationMatrix) -> Result<()> {
    if fs.n > MAX_SIGNED_BITS {
        return Err(domain(format!(
            "signed-vector enumeration needs n ≤ {MAX_SIGNED_BITS}"
        )));
    }
    if pert.dims() != (fs.n as usize, fs.t()) {
        return Err(domain("perturbation dimensions must be n×t"));
    }
    Ok(())
}

/// `max_g |Σ_j Σ_i sin(π·m_j·2^i·g_i/2ⁿ)·δ_ij| / t` over every nonzero
/// signed bit-difference vector `g ∈ {−1, 0, 1}ⁿ`.
pub fn perturbed_residual(fs: &FingerprintSet, pert: &PerturbationMatrix) -> Result<f64> {
    check_perturbation(fs, pert)?;
    let n = fs.n as usize;
    // sin is odd, so the inner sum is linear in g_i
    let coeff: Vec<f64> = (0..n)
        .map(|i| {
            fs.m_values
                .iter()
                .enumerate()
                .map(|(j, &m)| fs.reduced_angle(m, i as u32).sin() * pert.get(i, j))
                .sum()
        })
        .collect();
    let t = fs.t() as f64;
    let cases = 3usize.pow(n as u32);
    let (_, worst) = exec::max_over_range(0..cases, |k| {
        signed_vector(k, n)
            .zip(&coeff)
            .map(|(g, c)| g as f64 * c)
            .sum::<f64>()
            .abs()
            / t
    })
    .unwrap_or((0, 0.0));
    Ok(worst)
}

/// Both fingerprint inequalities: the cosine residual and the perturbation
/// sensitivity each at most `√ε` for every nonzero difference.
pub fn verify_perturbed(fs: &FingerprintSet, pert: &PerturbationMatrix) -> Result<bool> {
    check_perturbation(fs, pert)?;
    let bound = fs.epsilon.sqrt();
    Ok(max_residual(fs)? <= bound && perturbed_residual(fs, pert)? <= bound)
}

/// Largest `|amplitude|` of `|0⟩⊗|0⟩` over all `x ≠ y` when every rotation
/// `R(θ_ij)` is realised as `R(θ_ij + δ_ij)` (and its inverse for `y`).
pub fn perturbed_false_accept_amplitude(
    fs: &FingerprintSet,
    pert: &PerturbationMatrix,
) -> Result<f64> {
    check_perturbation(fs, pert)?;
    let n = fs.n as usize;
    let zero = (3usize.pow(n as u32) - 1) / 2;
    let t = fs.t() as f64;
    let (_, worst) = exec::max_over_range(0..3usize.pow(n as u32), |k| {
        if k == zero {
            return 0.0;
        }
        let g: Vec<i32> = signed_vector(k, n).collect();
        fs.m_values
            .iter()
            .enumerate()
            .map(|(j, &m)| {
                g.iter()
                    .enumerate()
                    .map(|(i, &gi)| gi as f64 * (fs.reduced_angle(m, i as u32) + pert.get(i, j)))
                    .sum::<f64>()
                    .cos()
            })
            .sum::<f64>()
            .abs()
            / t
    })
    .unwrap_or((0, 0.0));
    Ok(worst)
}

/// A fingerprint set together with the search effort that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundSet {
    pub set: FingerprintSet,
    pub attempts: usize,
    pub max_residual: f64,
}

/// Samples sets of `next_pow2(⌈(2/ε)(n+3)⌉)` integers until one verifies.
pub fn find_fingerprint_set(n: u32, eps: f64, seed: u64, max_attempts: usize) -> Result<FoundSet> {
    let t = fingerprint_size(n, eps)?.next_power_of_two();
    find_fingerprint_set_of_size(n, eps, t, seed, max_attempts)
}

/// Attempt `k` draws `t` integers uniformly, with replacement, from
/// `[0, 2ⁿ)` using the generator for `(seed, FINGERPRINT, k)`.
pub fn find_fingerprint_set_of_size(
    n: u32,
    eps: f64,
    t: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<FoundSet> {
    if max_attempts == 0 {
        return Err(domain("max_attempts must be at least 1"));
    }
    if t == 0 {
        return Err(domain("t must be positive"));
    }
    if n > MAX_VERIFY_BITS {
        return Err(domain(format!(
            "search verifies by brute force and needs n ≤ {MAX_VERIFY_BITS}"
        )));
    }
    let mut best = f64::INFINITY;
    for attempt in 0..max_attempts {
        let mut rng = rng_for(seed, stream::FINGERPRINT, attempt as u64);
        let m_values = (0..t).map(|_| rng.random_range(0..1u64 << n)).collect();
        let set = FingerprintSet::new(n, m_values, eps)?;
        let residual = max_residual(&set)?;
        if residual <= eps.sqrt() {
            return Ok(FoundSet {
                set,
                attempts: attempt + 1,
                max_residual: residual,
            });
        }
        best = best.min(residual);
    }
    Err(Error::SearchExhausted {
        attempts: max_attempts,
        best_max_deviation: best,
    })
}

/// `(ln C(2ⁿ, t), nt·ln2 − t²/2ⁿ − t·ln t + t)` in nats.
pub fn entropy_bits(n: u32, t: u64) -> Result<(f64, f64)> {
    if !(1..=MAX_BITS).contains(&n) {
        return Err(domain(format!("bit length {n} outside 1..={MAX_BITS}")));
    }
    let size = 1u64 << n;
    if t > size {
        return Err(domain(format!("t = {t} exceeds 2^{n}")));
    }
    let k = t.min(size - t);
    let big = size as f64;
    let exact = if k == 0 {
        0.0
    } else if k <= 10_000_000 {
        // ln(N!/(N−k)!) as Σ ln(N − i), each term split as n·ln2 + ln(1 − i/N)
        let falling: f64 = (0..k)
            .map(|i| n as f64 * LN_2 + (-(i as f64) / big).ln_1p())
            .sum();
        falling - ln_gamma(k as f64 + 1.0)
    } else {
        ln_gamma(big + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((size - k) as f64 + 1.0)
    };
    let tf = t as f64;
    let t_ln_t = if t == 0 { 0.0 } else { tf * tf.ln() };
    let approx = tf * n as f64 * LN_2 - tf * tf / big - t_ln_t + tf;
    Ok((exact, approx))
}
