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

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix2;
use qsk_core::rng::{haar_sample, rng_for};
use qsk_core::su2::{
    dist_projective, dist_spectral, rotation_y, to_axis_angle, BlochPoint, Complex, QubitState,
    Unitary2,
};
use rand::Rng;

fn svd_norm(u: &Unitary2, v: &Unitary2) -> f64 {
    let d = Matrix2::from_fn(|r, c| u.get(r, c) - v.get(r, c));
    d.singular_values().max()
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

fn phase_scan(u: &Unitary2, v: &Unitary2) -> f64 {
    let f = |phi: f64| dist_spectral(u, &v.with_phase(phi));
    let steps = 720;
    let h = TAU / steps as f64;
    let best = (0..steps)
        .min_by(|&i, &j| f(i as f64 * h).total_cmp(&f(j as f64 * h)))
        .unwrap();
    golden_min(f, (best as f64 - 1.0) * h, (best as f64 + 1.0) * h)
}

#[test]
fn spectral_matches_svd() {
    let us = haar_sample(11, 100, 1000);
    let vs = haar_sample(12, 100, 1000);
    for (u, v) in us.iter().zip(&vs) {
        assert!((dist_spectral(u, v) - svd_norm(u, v)).abs() < 1e-12);
    }
}

#[test]
fn spectral_of_nearby_y_rotations() {
    for &(theta, eps) in &[(0.3, 1e-3), (1.1, 0.2), (-2.0, 0.5), (0.0, 1e-8)] {
        let got = dist_spectral(&rotation_y(theta), &rotation_y(theta + eps));
        let svd = svd_norm(&rotation_y(theta), &rotation_y(theta + eps));
        let expected = 2.0 * (eps / 2.0f64).sin().abs();
        assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
        assert!((svd - expected).abs() < 1e-12);
    }
    let minus = Unitary2::IDENTITY.with_phase(PI);
    assert!((dist_spectral(&Unitary2::IDENTITY, &minus) - 2.0).abs() < 1e-15);
    assert_eq!(dist_spectral(&minus, &minus), 0.0);
}

#[test]
fn projective_matches_phase_scan() {
    let scanned = phase_scan(&Unitary2::IDENTITY, &rotation_y(0.2));
    assert!((dist_projective(&Unitary2::IDENTITY, &rotation_y(0.2)) - scanned).abs() < 1e-9);
    let us = haar_sample(13, 100, 200);
    let vs = haar_sample(14, 100, 200);
    for (u, v) in us.iter().zip(&vs) {
        assert!((dist_projective(u, v) - phase_scan(u, v)).abs() < 1e-9);
    }
}

#[test]
fn projective_ignores_phase() {
    for u in haar_sample(15, 100, 50) {
        assert!(dist_projective(&u, &u.with_phase(PI / 3.0)) < 1e-7);
        assert!(dist_projective(&u, &u.with_phase(PI)) < 1e-7);
    }
    let minus = Unitary2::IDENTITY.with_phase(PI);
    assert_eq!(dist_projective(&Unitary2::IDENTITY, &minus), 0.0);
}

#[test]
fn metric_properties() {
    let a = haar_sample(21, 100, 10_000);
    let b = haar_sample(22, 100, 10_000);
    let c = haar_sample(23, 100, 10_000);
    for ((u, v), w) in a.iter().zip(&b).zip(&c) {
        assert_eq!(dist_spectral(u, v), dist_spectral(v, u));
        assert!(dist_spectral(u, w) <= dist_spectral(u, v) + dist_spectral(v, w) + 1e-12);
        assert!(dist_projective(u, v) <= dist_spectral(u, v) + 1e-12);
    }
}

#[test]
fn axis_angle_round_trip() {
    for u in haar_sample(31, 100, 1000) {
        let aa = to_axis_angle(&u);
        assert!((0.0..=PI).contains(&aa.angle));
        assert!(dist_projective(&aa.to_unitary(), &u) <= 1e-10);
    }
    let id = to_axis_angle(&Unitary2::IDENTITY);
    assert_eq!((id.axis, id.angle), ([0.0, 0.0, 1.0], 0.0));
    let aa = to_axis_angle(&rotation_y(0.4));
    assert!(aa.axis[0].abs() < 1e-15 && aa.axis[2].abs() < 1e-15);
    assert!((aa.axis[1].abs() - 1.0).abs() < 1e-15);
    assert!((aa.angle - 0.8).abs() < 1e-14);
}

#[test]
fn rotation_applied_to_zero() {
    let s = rotation_y(PI / 6.0).apply(&QubitState::ZERO);
    assert!((s.amp0 - Complex::new(3f64.sqrt() / 2.0, 0.0)).norm() < 1e-15);
    assert!((s.amp1 - Complex::new(-0.5, 0.0)).norm() < 1e-15);
}

#[test]
fn long_product_stays_unitary() {
    let factors = haar_sample(41, 100, 1000);
    let mut acc = Unitary2::IDENTITY;
    let mut worst: f64 = 0.0;
    for k in 0..100_000 {
        acc = acc * factors[k % factors.len()];
        worst = worst.max(acc.unitarity_defect());
    }
    assert!(worst <= 1e-12, "defect {worst}");
}

#[test]
fn bloch_round_trip() {
    let mut rng = rng_for(51, 100, 0);
    for _ in 0..10_000 {
        let theta = rng.random_range(1e-3..PI - 1e-3);
        let phi = rng.random_range(0.0..TAU);
        let p = BlochPoint::new(theta, phi).unwrap();
        let q = QubitState::from_bloch(p).to_bloch();
        assert!((q.theta - theta).abs() < 1e-10);
        let dphi = (q.phi - phi).rem_euclid(TAU);
        assert!(dphi.min(TAU - dphi) < 1e-10);
    }
    assert_eq!(QubitState::ZERO.to_bloch(), BlochPoint::NORTH);
}
