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

//! Exact 2×2 complex linear algebra on single-qubit operators.
//!
//! Operators are compared through the unit quaternion of their special-unitary
//! representative. For `U = e^{iγ}(w0·I − i(w1·X + w2·Y + w3·Z))` the phase
//! carried by every quaternion component is the same, so the quaternion can be
//! read off any unitary without first dividing by `sqrt(det U)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

pub use num_complex::Complex64 as Complex;

use crate::error::{domain, Result};

/// Tolerance on `‖U†U − I‖` accepted by [`Unitary2::from_matrix`].
pub const UNITARY_TOL: f64 = 1e-12;

const POLE_TOL: f64 = 1e-12;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// A 2×2 unitary matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex; 2]; 2],
}

impl fmt::Debug for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    /// Validates finiteness and unitarity before accepting the entries.
    pub fn from_matrix(m: [[Complex; 2]; 2]) -> Result<Self> {
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(domain("matrix entries must be finite"));
        }
        let u = Unitary2 { m };
        let defect = u.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(domain(format!("matrix is not unitary (defect {defect:e})")));
        }
        Ok(u)
    }

    pub(crate) const fn from_matrix_unchecked(m: [[Complex; 2]; 2]) -> Self {
        Unitary2 { m }
    }

    pub fn entries(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.m[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Unitary2 {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex {
        self.m[0][0] + self.m[1][1]
    }

    /// Multiplies by the global phase `e^{iφ}`.
    pub fn with_phase(&self, phi: f64) -> Self {
        let p = Complex::from_polar(1.0, phi);
        let m = &self.m;
        Unitary2 {
            m: [[p * m[0][0], p * m[0][1]], [p * m[1][0], p * m[1][1]]],
        }
    }

    /// Spectral norm of `U†U − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = raw_product(&self.adjoint().m, &self.m);
        let d = [[p[0][0] - ONE, p[0][1]], [p[1][0], p[1][1] - ONE]];
        spectral_norm(&d)
    }

    pub fn apply(&self, s: &QubitState) -> QubitState {
        QubitState {
            amp0: self.m[0][0] * s.amp0 + self.m[0][1] * s.amp1,
            amp1: self.m[1][0] * s.amp0 + self.m[1][1] * s.amp1,
        }
    }

    /// Unit quaternion `(w0, w1, w2, w3)` of the special-unitary
    /// representative, sign-fixed so that the first component whose
    /// magnitude exceeds 1e-12 is positive.
    pub fn quaternion(&self) -> [f64; 4] {
        let z = self.phased_quaternion();
        let (k, _) = z.iter().enumerate().fold((0, -1.0), |best, (i, c)| {
            if c.norm_sqr() > best.1 {
                (i, c.norm_sqr())
            } else {
                best
            }
        });
        let unphase = Complex::from_polar(1.0, -z[k].arg());
        let mut w = z.map(|c| (c * unphase).re);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in w.iter_mut() {
            *x /= norm;
        }
        if let Some(lead) = w.iter().find(|x| x.abs() > 1e-12) {
            if *lead < 0.0 {
                for x in w.iter_mut() {
                    *x = -*x;
                }
            }
        }
        w
    }

    /// Quaternion components each multiplied by the global phase `e^{iγ}`.
    fn phased_quaternion(&self) -> [Complex; 4] {
        let m = &self.m;
        let i = Complex::i();
        [
            (m[0][0] + m[1][1]) * 0.5,
            i * (m[0][1] + m[1][0]) * 0.5,
            (m[1][0] - m[0][1]) * 0.5,
            i * (m[0][0] - m[1][1]) * 0.5,
        ]
    }

    /// The SU(2) element `w0·I − i(w1·X + w2·Y + w3·Z)`; `w` is normalised first.
    pub fn from_quaternion(w: [f64; 4]) -> Result<Self> {
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(domain("quaternion must be finite and nonzero"));
        }
        let [a, b, c, d] = w.map(|x| x / norm);
        Ok(Unitary2 {
            m: [
                [Complex::new(a, -d), Complex::new(-c, -b)],
                [Complex::new(c, -b), Complex::new(a, d)],
            ],
        })
    }

    /// Re-orthonormalises the columns (Gram-Schmidt).
    pub(crate) fn reorthonormalized(&self) -> Self {
        let m = &self.m;
        let (mut a0, mut a1) = (m[0][0], m[1][0]);
        let n0 = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        a0 /= n0;
        a1 /= n0;
        let (b0, b1) = (m[0][1], m[1][1]);
        let proj = a0.conj() * b0 + a1.conj() * b1;
        let (mut c0, mut c1) = (b0 - proj * a0, b1 - proj * a1);
        let n1 = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        c0 /= n1;
        c1 /= n1;
        Unitary2 {
            m: [[a0, c0], [a1, c1]],
        }
    }
}

fn raw_product(a: &[[Complex; 2]; 2], b: &[[Complex; 2]; 2]) -> [[Complex; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Largest singular value of an arbitrary 2×2 complex matrix, as the top
/// eigenvalue of the Hermitian `D·D†` whose discriminant is a sum of squares.
fn spectral_norm(d: &[[Complex; 2]; 2]) -> f64 {
    let p = d[0][0].norm_sqr() + d[0][1].norm_sqr();
    let q = d[1][0].norm_sqr() + d[1][1].norm_sqr();
    let r = d[0][0] * d[1][0].conj() + d[0][1] * d[1][1].conj();
    let disc = (p - q).hypot(2.0 * r.norm());
    ((p + q + disc) / 2.0).sqrt()
}

/// Matrix product; the result is re-orthonormalised so long chains stay
/// unitary to working precision.
impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2 {
            m: raw_product(&self.m, &rhs.m),
        }
        .reorthonormalized()
    }
}

impl Mul for &Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: &Unitary2) -> Unitary2 {
        *self * *rhs
    }
}

/// `[[cos θ, sin θ], [−sin θ, cos θ]]`, a Bloch-sphere rotation by `2θ`
/// about the y axis.
pub fn rotation_y(theta: f64) -> Unitary2 {
    let (s, c) = theta.sin_cos();
    Unitary2 {
        m: [
            [Complex::new(c, 0.0), Complex::new(s, 0.0)],
            [Complex::new(-s, 0.0), Complex::new(c, 0.0)],
        ],
    }
}

/// `exp(−i·angle/2 · n·σ)`: rotates the Bloch sphere by `angle` about `axis`.
pub fn rotation_about(axis: [f64; 3], angle: f64) -> Result<Unitary2> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm < 1e-300 || !angle.is_finite() {
        return Err(domain("rotation axis must be a finite nonzero vector"));
    }
    let (s, c) = (angle / 2.0).sin_cos();
    let n = axis.map(|x| x / norm);
    Unitary2::from_quaternion([c, s * n[0], s * n[1], s * n[2]])
}

/// Largest singular value of `U − V`.
pub fn dist_spectral(u: &Unitary2, v: &Unitary2) -> f64 {
    let d = [
        [u.m[0][0] - v.m[0][0], u.m[0][1] - v.m[0][1]],
        [u.m[1][0] - v.m[1][0], u.m[1][1] - v.m[1][1]],
    ];
    spectral_norm(&d)
}

/// `min_φ ‖U − e^{iφ}V‖₂`.
///
/// With `β` the half rotation angle of `U†V`, the minimum is `2·sin(β/2)`
/// (equivalently `sqrt(2 − |tr U†V|)`). `β` comes from `atan2` of the
/// quaternion components so small distances keep full relative precision.
pub fn dist_projective(u: &Unitary2, v: &Unitary2) -> f64 {
    let w = Unitary2 {
        m: raw_product(&u.adjoint().m, &v.m),
    };
    let z = w.phased_quaternion();
    let vec = (z[1].norm_sqr() + z[2].norm_sqr() + z[3].norm_sqr()).sqrt();
    let beta = vec.atan2(z[0].norm());
    2.0 * (beta / 2.0).sin()
}

/// Rotation axis and Bloch angle of an operator, global phase stripped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub axis: [f64; 3],
    /// Radians in `[0, π]`; angles past π are represented by the flipped axis.
    pub angle: f64,
}

impl AxisAngle {
    pub const IDENTITY: AxisAngle = AxisAngle {
        axis: [0.0, 0.0, 1.0],
        angle: 0.0,
    };

    pub fn to_unitary(&self) -> Unitary2 {
        let (s, c) = (self.angle / 2.0).sin_cos();
        let n = self.axis;
        Unitary2::from_quaternion([c, s * n[0], s * n[1], s * n[2]]).expect("axis is a unit vector")
    }
}

/// Axis-angle form of the special-unitary representative of `u`.
///
/// The angle is `2·atan2(|w⃗|, w0)` with `w0 ≥ 0`, which stays well
/// conditioned next to the identity.
pub fn to_axis_angle(u: &Unitary2) -> AxisAngle {
    let mut w = u.quaternion();
    if w[0] < 0.0 {
        w = w.map(|x| -x);
    }
    let vec = (w[1] * w[1] + w[2] * w[2] + w[3] * w[3]).sqrt();
    if vec == 0.0 {
        return AxisAngle::IDENTITY;
    }
    AxisAngle {
        axis: [w[1] / vec, w[2] / vec, w[3] / vec],
        angle: 2.0 * vec.atan2(w[0]),
    }
}

/// A pure single-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub amp0: Complex,
    pub amp1: Complex,
}

impl QubitState {
    pub const ZERO: QubitState = QubitState {
        amp0: ONE,
        amp1: ZERO,
    };

    pub fn new(amp0: Complex, amp1: Complex) -> Result<Self> {
        let s = QubitState { amp0, amp1 };
        if (s.norm_sqr() - 1.0).abs() > UNITARY_TOL {
            return Err(domain("state is not normalised"));
        }
        Ok(s)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Born-rule probabilities of measuring 0 and 1.
    pub fn probabilities(&self) -> [f64; 2] {
        [self.amp0.norm_sqr(), self.amp1.norm_sqr()]
    }

    pub fn from_bloch(p: BlochPoint) -> Self {
        let (s, c) = (p.theta / 2.0).sin_cos();
        QubitState {
            amp0: Complex::new(c, 0.0),
            amp1: Complex::from_polar(s, p.phi),
        }
    }

    pub fn to_bloch(&self) -> BlochPoint {
        let (r0, r1) = (self.amp0.norm(), self.amp1.norm());
        if r1 <= POLE_TOL {
            return BlochPoint::NORTH;
        }
        if r0 <= POLE_TOL {
            return BlochPoint::SOUTH;
        }
        let theta = 2.0 * r1.atan2(r0);
        let phi = (self.amp1.arg() - self.amp0.arg()).rem_euclid(TAU);
        BlochPoint {
            theta,
            phi: if phi >= TAU { 0.0 } else { phi },
        }
    }
}

/// Polar and azimuthal angles on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    pub const NORTH: BlochPoint = BlochPoint {
        theta: 0.0,
        phi: 0.0,
    };
    pub const SOUTH: BlochPoint = BlochPoint {
        theta: PI,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(domain("bloch angles out of range"));
        }
        if theta == 0.0 {
            return Ok(Self::NORTH);
        }
        if theta == PI {
            return Ok(Self::SOUTH);
        }
        Ok(BlochPoint { theta, phi })
    }
}
