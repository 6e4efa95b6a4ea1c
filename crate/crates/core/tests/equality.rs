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

use std::f64::consts::PI;

use qsk_core::equality::{
    acceptance_amplitude, entropy_bits, find_fingerprint_set, find_fingerprint_set_of_size,
    fingerprint_size, max_residual, perturbed_residual, run_streaming, simulate_statevector,
    statevector_final_state, stream_branches, value_of, verify_fingerprint_set, verify_perturbed,
    worst_false_accept, BitOrder, FingerprintSet, PerturbationMatrix,
};
use qsk_core::rng::{rng_for, stream};
use rand::seq::SliceRandom;
use rand::Rng;

fn bits_of(x: u64, n: u32) -> Vec<bool> {
    (0..n).map(|i| (x >> i) & 1 == 1).collect()
}

fn random_set<R: Rng>(rng: &mut R, n: u32, t: usize, eps: f64) -> FingerprintSet {
    let m = (0..t).map(|_| rng.random_range(0..1u64 << n)).collect();
    FingerprintSet::new(n, m, eps).unwrap()
}

fn direct_amplitude(x: u64, y: u64, fs: &FingerprintSet) -> f64 {
    let g = x as f64 - y as f64;
    let half = (1u64 << fs.n()) as f64;
    fs.m_values()
        .iter()
        .map(|&m| (PI * m as f64 * g / half).cos())
        .sum::<f64>()
        / fs.t() as f64
}

#[test]
fn amplitude_examples() {
    let fs = FingerprintSet::new(2, vec![0, 1, 2, 3], 0.25).unwrap();
    assert!(acceptance_amplitude(2, 0, &fs).unwrap().abs() < 1e-15);
    assert!((acceptance_amplitude(1, 0, &fs).unwrap() - 0.25).abs() < 1e-15);
    assert!((acceptance_amplitude(3, 3, &fs).unwrap() - 1.0).abs() < 1e-15);
    assert!(verify_fingerprint_set(&fs).unwrap());
    assert!((max_residual(&fs).unwrap() - 0.25).abs() < 1e-15);
    let constant = FingerprintSet::new(3, vec![0], 0.9).unwrap();
    assert!(!verify_fingerprint_set(&constant).unwrap());
}

#[test]
fn streaming_matches_statevector() {
    let mut rng = rng_for(5, 100, 0);
    let mut worst: f64 = 0.0;
    for case in 0..1000 {
        let n = 1 + case % 6;
        let t = [1, 2, 4, 8][case % 4];
        let fs = random_set(&mut rng, n as u32, t, 0.5);
        let x = rng.random_range(0..1u64 << n);
        let y = if case % 5 == 0 {
            x
        } else {
            rng.random_range(0..1u64 << n)
        };
        let (xb, yb) = (bits_of(x, n as u32), bits_of(y, n as u32));
        let streamed = run_streaming(&xb, &yb, &fs).unwrap();
        let sv = simulate_statevector(&xb, &yb, &fs).unwrap();
        worst = worst.max((streamed - sv).abs());
        let norm: f64 = statevector_final_state(&xb, &yb, &fs)
            .unwrap()
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        assert!((norm - 1.0).abs() <= 1e-12);
    }
    assert!(worst <= 1e-10, "max difference {worst}");
}

#[test]
fn streaming_matches_closed_form() {
    let mut rng = rng_for(6, 100, 0);
    for case in 0..1000 {
        let n = 1 + (case % 16) as u32;
        let fs = random_set(&mut rng, n, 1 + case % 40, 0.5);
        let x = rng.random_range(0..1u64 << n);
        let y = rng.random_range(0..1u64 << n);
        let streamed = run_streaming(&bits_of(x, n), &bits_of(y, n), &fs).unwrap();
        let closed = acceptance_amplitude(x, y, &fs).unwrap();
        assert!((streamed - closed * closed).abs() <= 1e-12);
        assert!((closed - direct_amplitude(x, y, &fs)).abs() <= 1e-9);
    }
}

#[test]
fn equal_inputs_always_accept() {
    let mut rng = rng_for(7, 100, 0);
    for _ in 0..500 {
        let n = rng.random_range(1..=16);
        let t = rng.random_range(1..64);
        let fs = random_set(&mut rng, n, t, 0.5);
        let x = bits_of(rng.random_range(0..1u64 << n), n);
        assert!((run_streaming(&x, &x, &fs).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn arrival_order_within_a_half_is_irrelevant() {
    let mut rng = rng_for(8, 100, 0);
    for _ in 0..200 {
        let n = rng.random_range(2..=12u32);
        let fs = random_set(&mut rng, n, 16, 0.5);
        let (x, y) = (
            rng.random_range(0..1u64 << n),
            rng.random_range(0..1u64 << n),
        );
        let reference = stream_branches(&bits_of(x, n), &bits_of(y, n), &fs, BitOrder::LsbFirst)
            .unwrap()
            .acceptance_amplitude();
        let half = (1u64 << n) as f64;
        let mut events: Vec<(f64, u32)> = (0..n)
            .filter(|i| (x >> i) & 1 == 1)
            .map(|i| (1.0, i))
            .collect();
        events.shuffle(&mut rng);
        let mut y_events: Vec<(f64, u32)> = (0..n)
            .filter(|i| (y >> i) & 1 == 1)
            .map(|i| (-1.0, i))
            .collect();
        y_events.shuffle(&mut rng);
        events.extend(y_events);
        let amp = fs
            .m_values()
            .iter()
            .map(|&m| {
                events
                    .iter()
                    .map(|&(s, i)| s * PI * ((m << i) % (2 << n)) as f64 / half)
                    .sum::<f64>()
                    .cos()
            })
            .sum::<f64>()
            / fs.t() as f64;
        assert!((amp - reference).abs() <= 1e-12);
    }
}

#[test]
fn bit_order_conventions() {
    let bits = [true, false, false, true];
    assert_eq!(value_of(&bits, BitOrder::LsbFirst), 0b1001);
    assert_eq!(value_of(&[true, false, false], BitOrder::LsbFirst), 1);
    assert_eq!(value_of(&[true, false, false], BitOrder::MsbFirst), 4);
    let fs = FingerprintSet::new(3, vec![1, 5, 6], 0.5).unwrap();
    let msb = stream_branches(&[true, false, false], &[false; 3], &fs, BitOrder::MsbFirst)
        .unwrap()
        .acceptance_amplitude();
    assert!((msb - acceptance_amplitude(4, 0, &fs).unwrap()).abs() < 1e-15);
}

#[test]
fn verified_sets_bound_every_false_accept() {
    for n in [4, 6, 8, 10] {
        let found = find_fingerprint_set(n, 0.25, n as u64, 100).unwrap();
        let fs = &found.set;
        assert!(fs.t().is_power_of_two());
        assert!(fs.t() >= fingerprint_size(n, 0.25).unwrap());
        assert!(verify_fingerprint_set(fs).unwrap());
        let mut worst: f64 = 0.0;
        for g in 1..1u64 << n {
            worst = worst.max(acceptance_amplitude(g, 0, fs).unwrap().powi(2));
            worst = worst.max(acceptance_amplitude(0, g, fs).unwrap().powi(2));
        }
        assert!(worst <= 0.25);
        assert!((worst - worst_false_accept(fs).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn fourier_set_residual() {
    for n in 1..=10u32 {
        let fs = FingerprintSet::new(n, (0..1u64 << n).collect(), 0.5).unwrap();
        let r = max_residual(&fs).unwrap();
        assert!((r - 1.0 / (1u64 << n) as f64).abs() < 1e-12, "n={n}: {r}");
    }
}

#[test]
fn search_is_seeded() {
    let a = find_fingerprint_set(8, 0.25, 1, 100).unwrap();
    let b = find_fingerprint_set(8, 0.25, 1, 100).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.set.t(), 128);
    eprintln!(
        "n=8 eps=0.25: {} attempts, residual {}",
        a.attempts, a.max_residual
    );
    match find_fingerprint_set_of_size(8, 0.01, 4, 1, 3) {
        Err(qsk_core::Error::SearchExhausted { attempts, .. }) => assert_eq!(attempts, 3),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn text_round_trip() {
    let fs = find_fingerprint_set(6, 0.5, 3, 100).unwrap().set;
    let back = FingerprintSet::from_text(&fs.to_text()).unwrap();
    assert_eq!(back, fs);
    assert!(FingerprintSet::from_text("2 3 0.5\n1\n2\n").is_err());
    assert!(FingerprintSet::from_text("2 1 0.5\n4\n").is_err());
}

fn sign_sum_oracle(fs: &FingerprintSet, pert: &PerturbationMatrix) -> f64 {
    let n = fs.n();
    let half = (1u64 << n) as f64;
    (0..n as usize)
        .map(|i| {
            fs.m_values()
                .iter()
                .enumerate()
                .map(|(j, &m)| (PI * m as f64 * (1u64 << i) as f64 / half).sin() * pert.get(i, j))
                .sum::<f64>()
                .abs()
        })
        .sum::<f64>()
        / fs.t() as f64
}

#[test]
fn perturbed_residual_matches_sign_sum() {
    let mut rng = rng_for(9, stream::PERTURBATION, 0);
    for n in 1..=8u32 {
        let fs = random_set(&mut rng, n, 24, 0.5);
        let pert = PerturbationMatrix::random(n as usize, 24, 1.0 / n as f64, &mut rng);
        let got = perturbed_residual(&fs, &pert).unwrap();
        assert!((got - sign_sum_oracle(&fs, &pert)).abs() <= 1e-12);
    }
}

#[test]
fn zero_perturbation_reduces_to_plain_check() {
    let found = find_fingerprint_set(6, 0.25, 2, 100).unwrap();
    let zeros = PerturbationMatrix::zeros(6, found.set.t());
    assert_eq!(
        verify_perturbed(&found.set, &zeros).unwrap(),
        verify_fingerprint_set(&found.set).unwrap()
    );
    assert_eq!(perturbed_residual(&found.set, &zeros).unwrap(), 0.0);
}

#[test]
fn adversarial_perturbation_is_rejected() {
    let n = 8u32;
    let found = find_fingerprint_set(n, 0.25, 4, 100).unwrap();
    let fs = &found.set;
    let t = fs.t();
    let half = (1u64 << n) as f64;
    let mut delta = Vec::with_capacity(n as usize * t);
    for i in 0..n as usize {
        for &m in fs.m_values() {
            let s = (PI * m as f64 * (1u64 << i) as f64 / half).sin();
            delta.push(s.signum() / n as f64);
        }
    }
    let pert = PerturbationMatrix::new(n as usize, t, delta, 1.0 / n as f64).unwrap();
    assert!(perturbed_residual(fs, &pert).unwrap() > 0.5);
    assert!(!verify_perturbed(fs, &pert).unwrap());
}

#[test]
fn random_perturbations_sometimes_pass() {
    let n = 8u32;
    let eps = 0.25;
    let t = ((2.0 / eps) * (n as f64 + 3.0)).round() as usize;
    let fs = find_fingerprint_set_of_size(n, eps, t, 1, 100).unwrap().set;
    let mut passes = 0;
    for draw in 0..100 {
        let mut rng = rng_for(1, stream::PERTURBATION, draw);
        let pert = PerturbationMatrix::random(n as usize, t, 1.0 / n as f64, &mut rng);
        if verify_perturbed(&fs, &pert).unwrap() {
            passes += 1;
        }
    }
    eprintln!("perturbed verification pass rate: {passes}/100");
    assert!(passes > 0);
}

fn log_binomial_oracle(n: u32, t: u64) -> f64 {
    let big = (1u64 << n) as f64;
    (0..t)
        .map(|k| (big - k as f64).ln() - ((k + 1) as f64).ln())
        .sum()
}

#[test]
fn entropy_against_direct_sum() {
    for n in [1, 4, 8, 12, 16, 20] {
        for t in [0u64, 1, 2, 5, 60, 300] {
            if t > 1 << n {
                assert!(entropy_bits(n, t).is_err());
                continue;
            }
            let (exact, _) = entropy_bits(n, t).unwrap();
            let oracle = log_binomial_oracle(n, t);
            assert!(
                (exact - oracle).abs() <= 1e-9 * oracle.max(1.0),
                "n={n} t={t}"
            );
        }
    }
    assert_eq!(entropy_bits(8, 0).unwrap(), (0.0, 0.0));
    let (one, _) = entropy_bits(12, 1).unwrap();
    assert!((one - 12.0 * std::f64::consts::LN_2).abs() < 1e-12);
    let (exact, approx) = entropy_bits(12, 60).unwrap();
    assert!((exact - approx).abs() / exact <= 0.05);
}

#[test]
fn entropy_monotone_up_to_half() {
    let n = 10;
    let mut last = -1.0;
    for t in 0..=1u64 << (n - 1) {
        let (exact, _) = entropy_bits(n, t).unwrap();
        assert!(exact > last);
        last = exact;
    }
}
